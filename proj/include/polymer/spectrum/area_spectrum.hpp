#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polymer {

struct SpectrumOptions {
  double gamma = 1.0;
  double cutoff = 300.0;  ///< strict upper bound on eigenvalues, Planck units
  /// Largest 2j considered; defaults to the lossless cap for `cutoff`.
  std::optional<int> max_twice_j;
  double tolerance = 1e-9;  ///< values closer than this are one eigenvalue
  unsigned threads = 1;
};

/// Distinct area eigenvalues below a cutoff, ascending, starting at 0.
struct SpectrumTable {
  std::vector<double> eigenvalues;
  double gamma = 1.0;
  double dedup_tolerance = 1e-9;
  double cutoff = 0.0;
  int max_twice_j = 0;
  /// False when max_twice_j is small enough that a single larger spin would
  /// still fit below the cutoff, i.e. the table may be missing values.
  bool truncation_safe = true;
  std::size_t multisets = 0;  ///< spin multisets visited, before merging
};

/// Lossless spin cap: ceil(2 * cutoff / (8*pi*gamma*sqrt(3)/2)).
int default_max_twice_j(double cutoff, double gamma);

/// Depth-first generation over non-increasing spin sequences, pruned by the
/// remaining area budget. Parallel over the first spin; the result does not
/// depend on the thread count.
SpectrumTable enumerate_spectrum(const SpectrumOptions& options);

struct GapEntry {
  double area = 0.0;  ///< lower eigenvalue a_n
  double gap = 0.0;   ///< a_{n+1} - a_n
};

/// Consecutive differences, paired with the lower eigenvalue. Needs two entries.
std::vector<GapEntry> gap_statistics(const SpectrumTable& table);

struct CrowdingReport {
  bool passed = true;
  bool vacuous = false;  ///< no eigenvalue fell in the window
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  ///< max of gap / exp(-sqrt(a_n))
  double worst_area = 0.0;
  std::string note;
};

/// Tests gap <= exp(-sqrt(a_n)) (Planck units) for every a_n in
/// [window_lo, window_hi]. The bound is asymptotic; the window has to sit
/// beyond the regime where it is not expected to hold yet.
CrowdingReport crowding_check(std::span<const GapEntry> gaps, double window_lo, double window_hi);

}  // namespace polymer
