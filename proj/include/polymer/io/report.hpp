#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace polymer::io {

struct Verdict {
  std::string name;
  std::string status;  ///< "pass", "fail", "skipped" or "info"
  std::string detail;
};

/// Everything needed to reconstruct one engine run: its parameters, the
/// checks it evaluated, headline results and the files it wrote.
struct RunMeta {
  std::string engine;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Verdict> checks;
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> outputs;
};

nlohmann::json to_json(const RunMeta& meta);
RunMeta meta_from_json(const nlohmann::json& j);

/// `<output>.meta.json`.
std::filesystem::path meta_path_for(const std::filesystem::path& output);
void write_meta(const std::filesystem::path& path, const RunMeta& meta);
RunMeta read_meta(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

/// Human-readable summary: per run its parameters, check verdicts and
/// results, then a manifest of every output file with its digest.
/// An empty run list yields a report saying no engines ran.
std::string emit_report(std::span<const RunMeta> runs);

}  // namespace polymer::io
