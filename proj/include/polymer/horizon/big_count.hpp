#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace polymer::horizon {

using BigCount = boost::multiprecision::cpp_int;

/// ln N from the integer itself: the top 63 bits as a double plus the binary
/// exponent times ln 2. Relative error near 1e-16. Empty for N = 0.
std::optional<double> log_count(const BigCount& n);

/// Number of decimal digits (1 for zero).
std::size_t decimal_digits(const BigCount& n);

/// Exact decimal text, or "<digits>d:<leading 20 digits>" once the count
/// has more than `max_digits` digits.
std::string format_count(const BigCount& n, std::size_t max_digits = 1'000'000);

/// n / d as a double, for ratios of large counts.
double ratio(const BigCount& n, const BigCount& d);

}  // namespace polymer::horizon
