#include <cmath>
#include <numbers>

#include "doctest.h"
#include "polymer/errors.hpp"
#include "polymer/horizon/fits.hpp"

using namespace polymer;
using namespace polymer::horizon;

TEST_CASE("reference gamma") {
  CHECK(gamma0_reference() == doctest::Approx(std::log(2.0) / (std::sqrt(3.0) * std::numbers::pi)).epsilon(1e-15));
  CHECK(gamma0_reference() == doctest::Approx(0.12738).epsilon(1e-4));
}

TEST_CASE("straight line fit") {
  std::vector<double> a, s;
  for (int i = 0; i < 12; ++i) {
    a.push_back(100.0 + 50.0 * i);
    s.push_back(0.03 * a.back() + 2.0);
  }
  const auto fit = entropy_slope_fit(a, s, 2.0);
  CHECK(fit.slope == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit.implied_gamma0 == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(fit.samples == 12);
  a.resize(9);
  s.resize(9);
  CHECK_THROWS_AS(entropy_slope_fit(a, s, 1.0), InvalidArgument);
}

TEST_CASE("narrow area range is rejected") {
  std::vector<double> a, s;
  for (int i = 0; i < 12; ++i) {
    a.push_back(100.0 + i);
    s.push_back(a.back());
  }
  CHECK_THROWS_AS(entropy_slope_fit(a, s, 1.0), InvalidArgument);
}

TEST_CASE("growth rate of single spin counting is ln 2 per quantum") {
  const double q = 4.0 * std::sqrt(3.0) * std::numbers::pi * 0.7;
  CHECK(asymptotic_slope(CountingRule::r1(), 0.7) == doctest::Approx(std::log(2.0) / q).epsilon(1e-12));
  CHECK(asymptotic_slope(CountingRule::r3(true), 1.0) == asymptotic_slope(CountingRule::r3(), 1.0));
  CHECK(asymptotic_slope(CountingRule::r3(), 1.0) > asymptotic_slope(CountingRule::r2(), 1.0));
  CountingRule u = CountingRule::r2();
  u.ordering = Ordering::unordered;
  CHECK_THROWS_AS(asymptotic_slope(u, 1.0), InvalidArgument);
}

TEST_CASE("log correction recovered from synthetic data") {
  std::vector<double> a, s;
  for (int i = 0; i <= 30; ++i) {
    a.push_back(50.0 * std::pow(10.0, i / 30.0));
    s.push_back(0.07 * a.back() - 0.5 * std::log(a.back()) + 1.3);
  }
  const auto fit = subleading_fit(a, s, 0.07);
  CHECK(fit.log_coefficient == doctest::Approx(-0.5).epsilon(0.05));
  CHECK(fit.improves);
  CHECK(fit.conclusive);

  std::vector<double> flat;
  for (double x : a) flat.push_back(0.07 * x + 1.3);
  const auto none = subleading_fit(a, flat, 0.07);
  CHECK_FALSE(none.conclusive);

  std::vector<double> short_a{100.0, 200.0, 300.0}, short_s{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(subleading_fit(short_a, short_s, 0.0), InvalidArgument);
}

TEST_CASE("solar extrapolation is closed form") {
  const double g = gamma0_reference();
  const double slope = 0.25 / g;
  const auto e = extrapolate_solar(slope, g);
  CHECK(e.area == kSolarHorizonArea);
  CHECK(e.entropy == doctest::Approx(slope * 1e77));
  CHECK(e.punctures == doctest::Approx(1e77 / (4.0 * std::sqrt(3.0) * std::numbers::pi * g)));
  CHECK(e.label.find("not a verified count") != std::string::npos);
}
