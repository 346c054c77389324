#include "polymer/horizon/big_count.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "polymer/errors.hpp"

namespace polymer::horizon {

namespace mp = boost::multiprecision;
using Float50 = mp::cpp_bin_float_50;

namespace {

// n = top * 2^shift with top holding the leading `keep` bits.
struct Split {
  BigCount top;
  std::size_t shift = 0;
};

Split split(const BigCount& n, std::size_t keep) {
  const std::size_t bits = mp::msb(n) + 1;
  if (bits <= keep) return {n, 0};
  const std::size_t shift = bits - keep;
  return {n >> shift, shift};
}

// log10 of a positive count to ~40 significant digits.
Float50 log10_count(const BigCount& n) {
  const Split s = split(n, 128);
  return mp::log10(Float50(s.top)) + Float50(s.shift) * mp::log10(Float50(2));
}

}  // namespace

std::optional<double> log_count(const BigCount& n) {
  if (n < 0) throw InvalidArgument("state counts are non-negative");
  if (n == 0) return std::nullopt;
  const Split s = split(n, 63);
  const double top = static_cast<double>(s.top.convert_to<std::uint64_t>());
  return std::log(top) + static_cast<double>(s.shift) * std::numbers::ln2;
}

std::size_t decimal_digits(const BigCount& n) {
  if (n == 0) return 1;
  if (mp::msb(n) < 20000) return n.str().size();
  const Float50 lg = log10_count(n);
  auto digits = static_cast<std::size_t>(mp::floor(lg).convert_to<double>()) + 1;
  const Float50 frac = lg - mp::floor(lg);
  if (frac < Float50("1e-30") || frac > 1 - Float50("1e-30")) {
    // Too close to a power of ten to trust the logarithm.
    const BigCount p = mp::pow(BigCount(10), static_cast<unsigned>(digits - 1));
    if (n < p) --digits;
    else if (n >= p * 10) ++digits;
  }
  return digits;
}

std::string format_count(const BigCount& n, std::size_t max_digits) {
  const std::size_t digits = decimal_digits(n);
  if (digits <= max_digits) return n.str();
  if (digits <= 20) return n.str();
  if (digits <= 100000) {
    const BigCount lead = n / mp::pow(BigCount(10), static_cast<unsigned>(digits - 20));
    return std::to_string(digits) + "d:" + lead.str();
  }
  const Float50 lg = log10_count(n);
  const Float50 frac = lg - mp::floor(lg);
  const BigCount lead = mp::floor(mp::pow(Float50(10), frac + 19)).convert_to<BigCount>();
  return std::to_string(digits) + "d:" + lead.str();
}

double ratio(const BigCount& n, const BigCount& d) {
  if (d == 0) throw InvalidArgument("ratio with zero denominator");
  return (Float50(n) / Float50(d)).convert_to<double>();
}

}  // namespace polymer::horizon
