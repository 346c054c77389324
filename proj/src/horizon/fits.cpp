#include "polymer/horizon/fits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "polymer/errors.hpp"
#include "polymer/spectrum/spin.hpp"

namespace polymer::horizon {

double gamma0_reference() { return std::numbers::ln2 / (std::numbers::sqrt3 * std::numbers::pi); }

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
};

Line least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("fit is ill-conditioned: all abscissae coincide");
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    l.rss += r * r;
  }
  return l;
}

void require_matching(std::span<const double> a, std::span<const double> s) {
  if (a.size() != s.size()) throw InvalidArgument("areas and entropies differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !std::isfinite(s[i])) throw InvalidArgument("fit needs positive areas and finite entropies");
  }
}

}  // namespace

SlopeFit entropy_slope_fit(std::span<const double> areas, std::span<const double> entropies, double gamma) {
  require_matching(areas, entropies);
  require_positive_gamma(gamma);
  if (areas.size() < 10) throw InvalidArgument("slope fit needs at least 10 area samples");
  const auto [lo, hi] = std::ranges::minmax(areas);
  if (hi < 4.0 * lo) throw InvalidArgument("slope fit needs max(area) / min(area) >= 4");
  const Line l = least_squares(areas, entropies);
  SlopeFit f;
  f.slope = l.slope;
  f.intercept = l.intercept;
  f.implied_gamma0 = implied_gamma0(l.slope, gamma);
  f.rms_residual = std::sqrt(l.rss / static_cast<double>(areas.size()));
  f.samples = areas.size();
  return f;
}

SlopeFit entropy_slope_fit(std::span<const CountResult> results) {
  if (results.empty()) throw InvalidArgument("slope fit needs count results");
  std::vector<double> a, s;
  const double gamma = results.front().ensemble.gamma;
  const std::string rule = rule_name(results.front().rule);
  for (const auto& r : results) {
    if (r.ensemble.gamma != gamma || rule_name(r.rule) != rule) {
      throw InvalidArgument("slope fit needs one rule and one gamma throughout");
    }
    if (!r.entropy) throw InvalidArgument("slope fit got a window with no states");
    a.push_back(r.ensemble.area);
    s.push_back(*r.entropy);
  }
  return entropy_slope_fit(a, s, gamma);
}

double asymptotic_slope(const CountingRule& rule, double gamma) {
  validate_rule(rule);
  require_positive_gamma(gamma);
  if (rule.ordering == Ordering::unordered) throw InvalidArgument("unordered counting grows slower than exponentially");
  const int cap = rule.id == RuleId::r1 ? 1 : rule.max_twice_j.value_or(1 << 20);
  auto excess = [&](double s) {
    double sum = 0.0;
    for (int k = 1; k <= cap; ++k) {
      const double mult = rule.id == RuleId::r3 ? k + 1.0 : 2.0;
      const double term = mult * std::exp(-s * puncture_area(SpinLabel(k), gamma));
      sum += term;
      if (term < 1e-20 * sum) break;
    }
    return sum - 1.0;
  };
  // excess decreases in s; bracket the root from the j = 1/2 term alone.
  const double q1 = puncture_area(SpinLabel(1), gamma);
  double lo = std::numbers::ln2 / q1 * 0.5;
  double hi = std::numbers::ln2 / q1;
  while (excess(hi) > 0.0) hi *= 2.0;
  while (excess(lo) < 0.0) lo *= 0.5;
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t iterations = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(excess, lo, hi, tol, iterations);
  return 0.5 * (a + b);
}

SubleadingFit subleading_fit(std::span<const double> areas, std::span<const double> entropies, double slope) {
  require_matching(areas, entropies);
  if (areas.size() < 3) throw InvalidArgument("sub-leading fit needs at least 3 samples");
  const auto [lo, hi] = std::ranges::minmax(areas);
  if (hi < 10.0 * lo) throw InvalidArgument("sub-leading fit needs areas spanning a decade");
  std::vector<double> x(areas.size()), y(areas.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    x[i] = std::log(areas[i]);
    y[i] = entropies[i] - slope * areas[i];
    mean += y[i];
  }
  mean /= static_cast<double>(y.size());
  SubleadingFit f;
  for (double v : y) f.constant_rss += (v - mean) * (v - mean);
  const Line l = least_squares(x, y);
  f.log_coefficient = l.slope;
  f.offset = l.intercept;
  f.log_rss = l.rss;
  f.improves = f.log_rss < f.constant_rss;
  f.conclusive = f.improves && f.constant_rss - f.log_rss >= 0.1 * f.constant_rss;
  f.note = f.conclusive ? "log model explains the offset" : "log model gives no clear improvement; inconclusive";
  return f;
}

SolarExtrapolation extrapolate_solar(double slope, double gamma, double area) {
  if (!(area >= 0.0)) throw InvalidArgument("area must be non-negative");
  SolarExtrapolation e;
  e.area = area;
  e.entropy = slope * area;
  e.punctures = area / min_nonzero_area(gamma).value;
  e.label = "closed-form extrapolation of the fitted slope; not a verified count";
  return e;
}

}  // namespace polymer::horizon
