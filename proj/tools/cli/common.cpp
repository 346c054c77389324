#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "commands.hpp"
#include "polymer/errors.hpp"
#include "polymer/io/csv.hpp"

namespace polymer::cli {

namespace {

double to_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + ": '" + text + "' is not a number");
  }
  return v;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ':')) parts.push_back(item);
  if (!text.empty() && text.back() == ':') parts.emplace_back();
  return parts;
}

}  // namespace

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
  const auto parts = split(text);
  if (parts.size() != 2) throw InvalidArgument(std::string(what) + " expects lo:hi, got '" + text + "'");
  const double lo = to_number(parts[0], what);
  const double hi = to_number(parts[1], what);
  if (lo > hi) throw InvalidArgument(std::string(what) + ": lo exceeds hi");
  return {lo, hi};
}

Sweep parse_sweep(const std::string& text) {
  const auto parts = split(text);
  if (parts.size() != 3) throw InvalidArgument("--area-sweep expects lo:hi:steps, got '" + text + "'");
  Sweep s;
  s.lo = to_number(parts[0], "--area-sweep");
  s.hi = to_number(parts[1], "--area-sweep");
  const double steps = to_number(parts[2], "--area-sweep");
  if (steps < 1 || steps != std::floor(steps) || steps > 1e6) {
    throw InvalidArgument("--area-sweep: steps must be a positive integer");
  }
  s.steps = static_cast<int>(steps);
  if (!(s.lo > 0.0) || s.lo > s.hi) throw InvalidArgument("--area-sweep needs 0 < lo <= hi");
  if (s.steps > 1 && s.lo == s.hi) throw InvalidArgument("--area-sweep: several steps over an empty range");
  return s;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  io::write_file(path, content);
}

}  // namespace polymer::cli
