#include "polymer/cosmo/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polymer/cosmo/lattice_family.hpp"
#include "polymer/errors.hpp"

namespace polymer::cosmo {

const char* status_name(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "?";
}

bool ValidationReport::passed() const {
  return std::ranges::none_of(checks, [](const CheckResult& c) { return c.status == CheckStatus::fail; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  auto it = std::ranges::find(checks, name, &CheckResult::name);
  return it == checks.end() ? nullptr : &*it;
}

TestFunction TestFunction::sine() {
  return {"sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
          [](double x) { return -std::sin(x); }, true};
}

TestFunction TestFunction::zero() {
  auto z = [](double) { return 0.0; };
  return {"zero", z, z, z, true};
}

TestFunction TestFunction::step(double at) {
  auto z = [](double) { return 0.0; };
  return {"step", [at](double x) { return x < at ? 0.0 : 1.0; }, z, z, false};
}

std::vector<double> default_wdw_gammas() { return {0.1, 0.05, 0.025}; }

WdwResult wdw_limit_residual(const CoefficientModel& model, const TestFunction& test, std::span<const double> gammas) {
  WdwResult out;
  if (!model.continuum()) {
    out.skipped = true;
    out.note = "model declares no continuum-limit operator; check skipped";
    return out;
  }
  if (gammas.empty()) throw InvalidArgument("continuum check needs at least one gamma");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0.0)) throw InvalidArgument("continuum check gammas must be positive");
    if (i > 0 && !(gammas[i] < gammas[i - 1])) throw InvalidArgument("continuum check gammas must decrease");
  }
  const LatticeFamily& fam = *model.continuum();
  for (double gamma : gammas) {
    const double kappa = fam.kappa_per_gamma * gamma;
    const int first = static_cast<int>(std::ceil(fam.window_lo * fam.window_lo / kappa));
    const int last = static_cast<int>(std::floor(fam.window_hi * fam.window_hi / kappa));
    double worst = 0.0;
    for (int n = std::max(first, 1); n <= last; ++n) {
      const double x = lattice_node(n, kappa);
      if (x < fam.window_lo || x > fam.window_hi) continue;
      const Coefficients co = lattice_coefficients(fam, gamma, n);
      auto F = [&](int m) { return test.f(lattice_node(m, kappa)); };
      const double lattice = co.c * F(n + 8) + co.d * F(n + 4) + co.e * F(n) + co.f * F(n - 4) + co.g * F(n - 8);
      const double continuum = test.d2f(x) + test.df(x) / x;
      worst = std::max(worst, std::abs(lattice - continuum));
    }
    out.gammas.push_back(gamma);
    out.residuals.push_back(worst);
  }
  out.decreasing = true;
  for (std::size_t i = 1; i < out.residuals.size(); ++i) {
    const bool both_zero = out.residuals[i] == 0.0 && out.residuals[i - 1] == 0.0;
    if (!(out.residuals[i] < out.residuals[i - 1]) && !both_zero) out.decreasing = false;
  }
  if (!test.smooth) {
    out.flagged_nonsmooth = true;
    out.note = "test function '" + test.name + "' is not smooth; the limit is not expected to converge (flagged, not failed)";
  }
  return out;
}

namespace {

CheckResult curvature_check(const CoefficientModel& m) {
  CheckResult r;
  r.name = "curvature_bound";
  double sup = -std::numeric_limits<double>::infinity();
  int where = m.n_min();
  for (int n = m.n_min(); n <= m.n_max(); ++n) {
    const double b = m.b_eig(n);
    if (!std::isfinite(b)) {
      r.status = CheckStatus::fail;
      r.value = b;
      r.margin = -std::numeric_limits<double>::infinity();
      r.location = n;
      r.detail = "b diverges at n = " + std::to_string(n);
      return r;
    }
    if (b < 0.0) {
      r.status = CheckStatus::fail;
      r.value = b;
      r.location = n;
      r.detail = "negative curvature eigenvalue at n = " + std::to_string(n);
      return r;
    }
    if (b > sup) {
      sup = b;
      where = n;
    }
  }
  const double dev = std::abs(sup - kCurvatureBound);
  r.value = sup;
  r.margin = kCurvatureTolerance - dev;
  r.location = where;
  r.status = dev <= kCurvatureTolerance ? CheckStatus::pass : CheckStatus::fail;
  std::ostringstream s;
  s.precision(12);
  s << "sup b = " << sup << " at n = " << where << ", bound 256/81 = " << kCurvatureBound;
  r.detail = s.str();
  return r;
}

CheckResult product_check(const CoefficientModel& m) {
  CheckResult r;
  r.name = "product_convergence";
  if (!m.contains(kProductLevel)) {
    r.status = CheckStatus::fail;
    r.detail = "level 100 is not sampled";
    return r;
  }
  auto dev = [&](int n) { return std::abs(m.a_eig(n) * m.b_eig(n) - 1.0); };
  r.value = dev(kProductLevel);
  r.margin = kProductTolerance - r.value;
  r.location = kProductLevel;
  if (!(r.value <= kProductTolerance)) {
    r.status = CheckStatus::fail;
    std::ostringstream s;
    s << "|a b - 1| = " << r.value << " at n = 100 exceeds " << kProductTolerance;
    r.detail = s.str();
    return r;
  }
  for (int n = kProductLevel + 1; n <= m.n_max(); ++n) {
    if (dev(n) > dev(n - 1)) {
      r.status = CheckStatus::fail;
      r.location = n;
      r.detail = "|a b - 1| increases at n = " + std::to_string(n);
      return r;
    }
  }
  std::ostringstream s;
  s << "|a b - 1| = " << r.value << " at n = 100, non-increasing up to n = " << m.n_max();
  r.detail = s.str();
  return r;
}

CheckResult scale_factor_check(const CoefficientModel& m) {
  CheckResult r;
  r.name = "scale_factor_spectrum";
  for (int n = m.n_min(); n <= m.n_max(); ++n) {
    const double a = m.a_eig(n);
    if (!std::isfinite(a) || a < 0.0) {
      r.status = CheckStatus::fail;
      r.location = n;
      r.detail = "a must be finite and non-negative, fails at n = " + std::to_string(n);
      return r;
    }
  }
  for (int n = std::max(m.n_min(), 0) + 1; n <= m.n_max(); ++n) {
    if (!(m.a_eig(n) > m.a_eig(n - 1))) {
      r.status = CheckStatus::fail;
      r.location = n;
      r.detail = "a is not strictly increasing at n = " + std::to_string(n);
      return r;
    }
  }
  r.detail = "a >= 0, strictly increasing for n >= 0";
  return r;
}

CheckResult regularity_check(const CoefficientModel& m) {
  CheckResult r;
  r.name = "coefficient_regularity";
  for (int n = m.n_min(); n <= m.n_max(); ++n) {
    const Coefficients co = m.at(n);
    for (double v : {co.c, co.d, co.e, co.f, co.g}) {
      if (!std::isfinite(v)) {
        r.status = CheckStatus::fail;
        r.location = n;
        r.detail = "non-finite coefficient at n = " + std::to_string(n);
        return r;
      }
    }
  }
  // Steps at n reach n +- 8; only those levels ever divide.
  for (int n = m.n_min() + 8; n <= m.n_max() - 8; ++n) {
    const Coefficients co = m.at(n);
    if ((co.g == 0.0 || co.c == 0.0) && !m.is_decoupled(n)) {
      r.status = CheckStatus::fail;
      r.location = n;
      r.detail = std::string(co.g == 0.0 ? "g" : "c") + " vanishes at undeclared level " + std::to_string(n);
      return r;
    }
  }
  r.detail = m.decoupled_levels().empty() ? "c, g nonzero on every step level"
                                           : "c, g nonzero except at declared decoupling levels";
  return r;
}

CheckResult wdw_check(const CoefficientModel& m, std::vector<double>& residuals) {
  CheckResult r;
  r.name = "wheeler_dewitt_limit";
  const auto gammas = default_wdw_gammas();
  const WdwResult w = wdw_limit_residual(m, TestFunction::sine(), gammas);
  if (w.skipped) {
    r.status = CheckStatus::skipped;
    r.detail = w.note;
    return r;
  }
  residuals = w.residuals;
  r.status = w.decreasing ? CheckStatus::pass : CheckStatus::fail;
  r.value = w.residuals.back();
  std::ostringstream s;
  s << "sup residual on a in window for gamma =";
  for (std::size_t i = 0; i < w.gammas.size(); ++i) s << (i ? ", " : " ") << w.gammas[i] << ": " << w.residuals[i];
  r.detail = s.str();
  return r;
}

}  // namespace

ValidationReport validate_model(const CoefficientModel& model) {
  ValidationReport report;
  report.checks.push_back(curvature_check(model));
  report.checks.push_back(product_check(model));
  report.checks.push_back(scale_factor_check(model));
  report.checks.push_back(regularity_check(model));
  report.checks.push_back(wdw_check(model, report.wdw_residuals));
  return report;
}

}  // namespace polymer::cosmo
