#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "polymer/errors.hpp"
#include "polymer/spectrum/area_spectrum.hpp"
#include "polymer/spectrum/spin.hpp"

using namespace polymer;

namespace {

// Walks occupation numbers spin by spin, independent of the library's
// non-increasing sequence walk.
void occupations(const std::vector<double>& q, std::size_t i, double sum, double cutoff, std::vector<double>& out) {
  if (i == q.size()) {
    out.push_back(sum);
    return;
  }
  for (double s = sum; s < cutoff; s += q[i]) occupations(q, i + 1, s, cutoff, out);
}

std::vector<double> brute_force(double gamma, double cutoff) {
  std::vector<double> q;
  for (int k = 1;; ++k) {
    const double v = 8.0 * std::numbers::pi * gamma * std::sqrt(0.25 * k * (k + 2));
    if (v >= cutoff) break;
    q.push_back(v);
  }
  std::vector<double> all;
  occupations(q, 0, 0.0, cutoff, all);
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double v : all) {
    if (out.empty() || v - out.back() > 1e-9) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("spin labels and single puncture areas") {
  CHECK_THROWS_AS(SpinLabel(-1), InvalidArgument);
  CHECK(SpinLabel(3).j() == 1.5);
  CHECK(SpinLabel(3).multiplicity() == 4);
  CHECK(area_contribution(SpinLabel(2)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(area_contribution(SpinLabel(0)), InvalidArgument);
  CHECK(puncture_area(SpinLabel::half(), 1.0) == doctest::Approx(4.0 * std::sqrt(3.0) * std::numbers::pi).epsilon(1e-15));
  CHECK(area_eigenvalue({}, 2.0).value == 0.0);
  const std::vector<SpinLabel> two{SpinLabel(1), SpinLabel(2)};
  const AreaValue v = area_eigenvalue(two, 0.5);
  CHECK(v.gamma == 0.5);
  CHECK(v.value == doctest::Approx(4.0 * std::numbers::pi * (std::sqrt(0.75) + std::sqrt(2.0))).epsilon(1e-14));
  CHECK_THROWS_AS(require_positive_gamma(0.0), InvalidArgument);
  CHECK_THROWS_AS(require_positive_gamma(NAN), InvalidArgument);
}

TEST_CASE("spectrum matches occupation-number enumeration below 100") {
  for (double gamma : {1.0, 0.5, 0.2374}) {
    SpectrumOptions o;
    o.gamma = gamma;
    o.cutoff = 100.0;
    const SpectrumTable t = enumerate_spectrum(o);
    const auto ref = brute_force(gamma, 100.0);
    REQUIRE(t.eigenvalues.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(t.eigenvalues[i] - ref[i]) <= 1e-9);
    CHECK(t.truncation_safe);
  }
}

TEST_CASE("spectrum does not depend on the thread count") {
  SpectrumOptions o;
  o.cutoff = 150.0;
  const auto one = enumerate_spectrum(o);
  o.threads = 3;
  const auto three = enumerate_spectrum(o);
  CHECK(one.eigenvalues == three.eigenvalues);
  CHECK(one.multisets == three.multisets);
}

TEST_CASE("a low spin cap is reported as unsafe") {
  SpectrumOptions o;
  o.cutoff = 100.0;
  o.max_twice_j = 1;
  const auto t = enumerate_spectrum(o);
  CHECK_FALSE(t.truncation_safe);
  CHECK(t.eigenvalues.size() == 5);
}

TEST_CASE("spectrum rejects bad options") {
  SpectrumOptions o;
  o.cutoff = -1.0;
  CHECK_THROWS_AS(enumerate_spectrum(o), InvalidArgument);
  o.cutoff = 10.0;
  o.gamma = 0.0;
  CHECK_THROWS_AS(enumerate_spectrum(o), InvalidArgument);
}

TEST_CASE("gap statistics and the crowding check") {
  SpectrumTable t;
  t.eigenvalues = {0.0};
  CHECK_THROWS_AS(gap_statistics(t), InvalidArgument);
  t.eigenvalues = {0.0, 1.0, 3.0};
  const auto gaps = gap_statistics(t);
  REQUIRE(gaps.size() == 2);
  CHECK(gaps[1].area == 1.0);
  CHECK(gaps[1].gap == 2.0);

  const std::vector<GapEntry> tight{{100.0, 1e-6}, {200.0, 1e-9}};
  CHECK(crowding_check(tight, 50.0, 300.0).passed);
  const std::vector<GapEntry> loose{{100.0, 1e-4}, {200.0, 1e-9}};
  const auto bad = crowding_check(loose, 50.0, 300.0);
  CHECK_FALSE(bad.passed);
  CHECK(bad.violations == 1);
  CHECK(bad.worst_area == 100.0);
  CHECK(bad.worst_ratio == doctest::Approx(1e-4 / std::exp(-10.0)));
  const auto none = crowding_check(tight, 400.0, 500.0);
  CHECK(none.passed);
  CHECK(none.vacuous);
  CHECK(none.note.rfind("no data in window", 0) == 0);
}

TEST_CASE("areas scale linearly with gamma and zero is isolated") {
  const std::vector<SpinLabel> spins{SpinLabel(1), SpinLabel(4), SpinLabel(7)};
  for (double c : {0.1, 2.0, 13.0}) {
    CHECK(area_eigenvalue(spins, 0.8 * c).value == doctest::Approx(c * area_eigenvalue(spins, 0.8).value).epsilon(1e-14));
  }
  for (double gamma : {0.3, 1.0}) {
    SpectrumOptions o;
    o.gamma = gamma;
    o.cutoff = 80.0 * gamma;
    const auto t = enumerate_spectrum(o);
    CHECK(t.eigenvalues.front() == 0.0);
    CHECK(t.eigenvalues.at(1) - t.eigenvalues.at(0) == min_nonzero_area(gamma).value);
  }
}
