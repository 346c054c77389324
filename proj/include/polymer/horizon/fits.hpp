#pragma once

#include <span>
#include <string>
#include <vector>

#include "polymer/horizon/ensemble.hpp"

namespace polymer::horizon {

/// ln 2 / (sqrt(3) pi), the gamma at which j = 1/2 counting meets S = a/4.
double gamma0_reference();

/// Bekenstein-Hawking normalization S = a/4: the gamma at which a fitted
/// slope (per unit area, measured at `gamma`) would give S = a/4.
inline double implied_gamma0(double slope, double gamma) { return 4.0 * slope * gamma; }

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double implied_gamma0 = 0.0;
  double rms_residual = 0.0;
  std::size_t samples = 0;
};

/// Least-squares line S = slope * a + intercept. Needs at least 10 samples
/// with max(a) / min(a) >= 4.
SlopeFit entropy_slope_fit(std::span<const double> areas, std::span<const double> entropies, double gamma);

/// Same, taking areas and entropies from count results (all with the same
/// rule and gamma; zero counts are rejected).
SlopeFit entropy_slope_fit(std::span<const CountResult> results);

/// Exponential growth rate of ordered counting: the root s of
/// sum_j mult(j) exp(-s a_j) = 1. The projection constraint does not change
/// it; unordered counting has no such rate and is rejected.
double asymptotic_slope(const CountingRule& rule, double gamma);

struct SubleadingFit {
  double log_coefficient = 0.0;
  double offset = 0.0;
  double log_rss = 0.0;       ///< residual sum of squares, S - slope*a = offset + c ln a
  double constant_rss = 0.0;  ///< residual sum of squares, S - slope*a = offset
  bool improves = false;      ///< log model has the smaller residual
  bool conclusive = false;    ///< and by at least 10 percent of the constant model's
  std::string note;
};

/// Fits S - slope * a against ln a. Areas must span a decade.
SubleadingFit subleading_fit(std::span<const double> areas, std::span<const double> entropies, double slope);

struct SolarExtrapolation {
  double area = 0.0;
  double entropy = 0.0;
  double punctures = 0.0;
  std::string label;
};

inline constexpr double kSolarHorizonArea = 1e77;

/// Closed form S = slope * a and a / (smallest puncture area). Not a count.
SolarExtrapolation extrapolate_solar(double slope, double gamma, double area = kSolarHorizonArea);

}  // namespace polymer::horizon
