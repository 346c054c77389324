#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace polymer::cli {

struct Globals {
  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct SpectrumArgs {
  double gamma = 1.0;
  double cutoff = 300.0;
  double tol = 1e-9;
  std::optional<int> max_twice_j;
  std::string crowding_window = "100:300";
};

struct CosmoArgs {
  std::string model;
  std::string range;
  bool select = false;
  std::string window;
  std::string negative_window;
  bool validate = false;
  std::string policy = "skip";
};

struct EntropyArgs {
  double gamma = 1.0;
  std::optional<double> area;
  std::string sweep;
  std::optional<double> delta;
  std::string rule = "r1";
  bool projection = false;
  std::optional<double> bin;
  std::string method = "dp";
  bool unordered = false;
  bool quantized = false;
  std::optional<int> max_twice_j;
  bool occupancy = false;
};

struct ReportArgs {
  std::vector<std::string> inputs;
};

int run_spectrum(const Globals& g, const SpectrumArgs& a, std::ostream& out);
int run_cosmo(const Globals& g, const CosmoArgs& a, std::ostream& out);
int run_entropy(const Globals& g, const EntropyArgs& a, std::ostream& out);
int run_report(const Globals& g, const ReportArgs& a, std::ostream& out);

/// "lo:hi" into two numbers; throws InvalidArgument on malformed text.
std::pair<double, double> parse_pair(const std::string& text, const char* what);
/// "lo:hi:steps".
struct Sweep {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};
Sweep parse_sweep(const std::string& text);

/// Writes `content` to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& content, std::ostream& out);

}  // namespace polymer::cli
