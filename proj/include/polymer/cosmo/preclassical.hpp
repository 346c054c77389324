#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polymer/cosmo/evolver.hpp"
#include "polymer/cosmo/wavefunction.hpp"

namespace polymer::cosmo {

/// Closed range of levels; lo > hi means empty.
struct Window {
  int lo = 0;
  int hi = -1;
  bool empty() const noexcept { return lo > hi; }
  int levels() const noexcept { return empty() ? 0 : hi - lo + 1; }
};

/// [ceil(0.75 n_max), n_max - 4]: the last levels whose +4 neighbour is still known.
Window default_late_window(int n_max);

/// sum_{n in window} |psi_{n+4} - psi_n|^2 / sum_{n in window} |psi_n|^2.
/// 0 when both sums vanish, +inf when only the denominator does.
/// Needs at least 3 levels, and n + 4 inside the support for every n.
double oscillation_measure(const WaveFunction& psi, Window window);

struct PreclassicalSelection {
  WaveFunction psi;
  std::vector<Amplitude> coefficients;  ///< weights of the basis elements (common-scale values)
  double lowest = 0.0;                  ///< smallest generalized eigenvalue, the attained measure
  double second = 0.0;
  Window window;
};

/// Minimizes the oscillation measure on `window` over the span of the basis.
/// The window matrix is whitened with its own SVD, so the generalized problem
/// reduces to the smallest right singular vector of the whitened difference
/// matrix. Output is scaled to max |psi| = 1 on the window and rotated so the
/// amplitude at the largest nonzero window level is real and positive.
/// Throws NonUniqueMinimum when the two lowest eigenvalues agree to 1e-8
/// relative, or both sit at the round-off floor.
PreclassicalSelection select_preclassical(const SolutionBasis& basis, Window window);

struct ScanReport {
  Window positive_window;
  Window negative_window;
  std::optional<double> positive;
  std::optional<double> negative;
  std::string note;
};

/// Oscillation measure on a late positive window and on a negative-n window,
/// side by side. Informational; nothing passes or fails.
ScanReport preclassicality_scan(const WaveFunction& solution, Window negative_window, Window positive_window);

}  // namespace polymer::cosmo
