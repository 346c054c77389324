#include "polymer/cosmo/preclassical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "polymer/errors.hpp"
#include "polymer/kernels/reduce.hpp"

namespace polymer::cosmo {

Window default_late_window(int n_max) {
  const int lo = static_cast<int>(std::ceil(0.75 * n_max));
  return {lo, n_max - 4};
}

namespace {

void require_window(const WaveFunction& psi, Window w) {
  if (w.levels() < 3) throw InvalidArgument("oscillation window needs at least 3 levels");
  if (w.lo < psi.lo() || w.hi + 4 > psi.hi()) {
    throw InvalidArgument("oscillation window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                          "] needs support up to " + std::to_string(w.hi + 4) + ", have [" + std::to_string(psi.lo()) +
                          ", " + std::to_string(psi.hi()) + "]");
  }
}

}  // namespace

double oscillation_measure(const WaveFunction& psi, Window window) {
  require_window(psi, window);
  const auto values = psi.common_scale();
  const auto len = static_cast<std::size_t>(window.levels());
  std::vector<double> base(2 * len), shifted(2 * len);
  for (std::size_t i = 0; i < len; ++i) {
    const auto at = static_cast<std::size_t>(window.lo - psi.lo()) + i;
    base[2 * i] = values[at].real();
    base[2 * i + 1] = values[at].imag();
    shifted[2 * i] = values[at + 4].real();
    shifted[2 * i + 1] = values[at + 4].imag();
  }
  const auto energy = kernels::difference_energy(base, shifted);
  if (energy.base == 0.0) return energy.difference == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return energy.difference / energy.base;
}

PreclassicalSelection select_preclassical(const SolutionBasis& basis, Window window) {
  if (basis.elements.empty()) throw InvalidArgument("empty solution basis");
  for (const auto& e : basis.elements) require_window(e, window);

  const auto m = static_cast<Eigen::Index>(window.levels());
  const auto k = static_cast<Eigen::Index>(basis.elements.size());
  std::vector<std::vector<Amplitude>> scaled;
  scaled.reserve(basis.elements.size());
  for (const auto& e : basis.elements) scaled.push_back(e.common_scale());

  Eigen::MatrixXcd w(m, k), wp(m, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& e = basis.elements[static_cast<std::size_t>(j)];
    const auto& v = scaled[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto at = static_cast<std::size_t>(window.lo - e.lo() + i);
      w(i, j) = v[at];
      wp(i, j) = v[at + 4];
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> whiten(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = whiten.singularValues();
  if (s.size() == 0 || s(0) == 0.0) throw InvalidArgument("basis vanishes on the selection window");
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > 1e-13 * s(0)) ++r;
  const Eigen::MatrixXcd t = whiten.matrixV().leftCols(r) * s.head(r).cwiseInverse().asDiagonal();
  const Eigen::MatrixXcd diff = (wp - w) * t;

  Eigen::BDCSVD<Eigen::MatrixXcd> osc(diff, Eigen::ComputeFullV);
  const auto& sig = osc.singularValues();
  // Eigenvalues in ascending order; a wide whitened block has extra exact zeros.
  std::vector<double> lambda(static_cast<std::size_t>(r), 0.0);
  for (Eigen::Index i = 0; i < sig.size(); ++i) lambda[static_cast<std::size_t>(r - 1 - i)] = sig(i) * sig(i);

  PreclassicalSelection out{WaveFunction(basis.lo, basis.hi), {}, lambda[0], 0.0, window};
  if (r >= 2) {
    out.second = lambda[1];
    const double top = sig.size() > 0 ? sig(0) : 0.0;
    const double floor = (1e-12 * top) * (1e-12 * top);
    if (std::abs(out.second - out.lowest) <= 1e-8 * out.second || out.second <= floor) {
      throw NonUniqueMinimum("lowest oscillation eigenvalues coincide: " + std::to_string(out.lowest) + " and " +
                             std::to_string(out.second));
    }
  }
  const Eigen::VectorXcd y = osc.matrixV().col(r - 1);
  const Eigen::VectorXcd c = t * y;

  std::vector<Amplitude> psi(static_cast<std::size_t>(basis.hi - basis.lo + 1), Amplitude{});
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& e = basis.elements[static_cast<std::size_t>(j)];
    const auto& v = scaled[static_cast<std::size_t>(j)];
    for (int n = basis.lo; n <= basis.hi; ++n) {
      psi[static_cast<std::size_t>(n - basis.lo)] += c(j) * v[static_cast<std::size_t>(n - e.lo())];
    }
  }

  auto at = [&](int n) -> Amplitude& { return psi[static_cast<std::size_t>(n - basis.lo)]; };
  Amplitude phase{1.0};
  for (int n = window.hi; n >= window.lo; --n) {
    if (std::abs(at(n)) > 0.0) {
      phase = std::conj(at(n)) / std::abs(at(n));
      break;
    }
  }
  double peak = 0.0;
  for (int n = window.lo; n <= window.hi; ++n) peak = std::max(peak, std::abs(at(n)));
  if (peak == 0.0) throw InvalidArgument("selected solution vanishes on the window");
  const Amplitude factor = phase / peak;

  const auto& ref = basis.elements.front();
  for (int n = basis.lo; n <= basis.hi; ++n) {
    if (!ref.determined(n)) {
      out.psi.mark_undetermined(n);
    } else {
      out.psi.set(n, at(n) * factor);
    }
  }
  out.coefficients.assign(c.data(), c.data() + c.size());
  return out;
}

ScanReport preclassicality_scan(const WaveFunction& solution, Window negative_window, Window positive_window) {
  ScanReport report;
  report.positive_window = positive_window;
  report.negative_window = negative_window;
  auto usable = [&](Window w) { return w.levels() >= 3 && w.lo >= solution.lo() && w.hi + 4 <= solution.hi(); };
  if (usable(positive_window)) report.positive = oscillation_measure(solution, positive_window);
  if (usable(negative_window)) {
    report.negative = oscillation_measure(solution, negative_window);
    report.note = "negative-n behaviour reported only; no verdict";
  } else {
    report.note = "no data in negative window";
  }
  return report;
}

}  // namespace polymer::cosmo
