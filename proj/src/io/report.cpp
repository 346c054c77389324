#include "polymer/io/report.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "polymer/io/csv.hpp"

namespace polymer::io {

using nlohmann::json;

json to_json(const RunMeta& meta) {
  json checks = json::array();
  for (const auto& v : meta.checks) checks.push_back({{"name", v.name}, {"status", v.status}, {"detail", v.detail}});
  return {{"engine", meta.engine},
          {"parameters", meta.parameters},
          {"checks", checks},
          {"results", meta.results},
          {"outputs", meta.outputs}};
}

RunMeta meta_from_json(const json& j) {
  RunMeta m;
  m.engine = j.at("engine").get<std::string>();
  m.parameters = j.value("parameters", json::object());
  m.results = j.value("results", json::object());
  for (const auto& c : j.value("checks", json::array())) {
    m.checks.push_back({c.at("name").get<std::string>(), c.at("status").get<std::string>(), c.value("detail", "")});
  }
  for (const auto& o : j.value("outputs", json::array())) m.outputs.push_back(o.get<std::string>());
  return m;
}

std::filesystem::path meta_path_for(const std::filesystem::path& output) {
  return std::filesystem::path(output.string() + ".meta.json");
}

void write_meta(const std::filesystem::path& path, const RunMeta& meta) {
  write_file(path, to_json(meta).dump(2) + "\n");
}

RunMeta read_meta(const std::filesystem::path& path) {
  try {
    return meta_from_json(json::parse(read_file(path)));
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed run metadata " + path.string() + ": " + e.what());
  }
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_real(v.get<double>());
  return v.dump();
}

void print_object(std::ostringstream& out, const json& obj, const char* indent) {
  for (const auto& [key, value] : obj.items()) out << indent << key << " = " << scalar_text(value) << '\n';
}

}  // namespace

std::string emit_report(std::span<const RunMeta> runs) {
  std::ostringstream out;
  out << "polymer run report\n";
  if (runs.empty()) {
    out << "\nno engines run\n";
    return out.str();
  }
  std::vector<std::string> files;
  for (const auto& run : runs) {
    out << "\n[" << run.engine << "]\n";
    out << "  parameters:\n";
    print_object(out, run.parameters, "    ");
    if (!run.checks.empty()) {
      out << "  checks:\n";
      for (const auto& c : run.checks) {
        out << "    " << c.name << ": " << c.status;
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << '\n';
      }
    }
    if (!run.results.empty()) {
      out << "  results:\n";
      print_object(out, run.results, "    ");
    }
    files.insert(files.end(), run.outputs.begin(), run.outputs.end());
  }
  out << "\nmanifest (sha256):\n";
  for (const auto& f : files) {
    std::string digest;
    try {
      digest = sha256_file(f);
    } catch (const std::exception&) {
      digest = "missing";
    }
    out << "  " << digest << "  " << f << '\n';
  }
  return out.str();
}

}  // namespace polymer::io
