#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "polymer/horizon/ensemble.hpp"

namespace polymer::horizon {

inline constexpr double kDefaultBudget = 1e9;

struct ExactOptions {
  double budget = kDefaultBudget;  ///< refuse when the search-tree estimate exceeds this
  bool track_occupancy = true;
};

/// Upper bound on the number of nodes the exact enumerator visits, from a
/// floating-point count over a grid with quanta rounded down.
double estimate_configurations(const HorizonEnsemble& ensemble, const CountingRule& rule);

/// Brute force: walks every puncture sequence (every (j, m) sequence under
/// projection) whose area stays inside the window. Throws BudgetExceeded
/// when estimate_configurations is above the budget.
CountResult count_states_exact(const HorizonEnsemble& ensemble, const CountingRule& rule,
                               const ExactOptions& options = {});

struct DpOptions {
  std::optional<double> bin_width;  ///< default delta / 16
  bool track_occupancy = false;
  std::size_t occupancy_samples = 20000;  ///< projection only: occupancy is sampled
  std::uint64_t seed = 1;
  bool force_bigint = false;  ///< skip the machine-word tier
};

/// Which arithmetic a table used.
enum class CountTier { machine_word, big_integer };

/// Counts of all puncture sequences whose area stays below a ceiling, kept
/// per exact area value. Values are grouped in bins of width `bin_width`;
/// since every puncture adds more than two bins, bins are final once reached
/// in ascending order. Built once, then queried for any window below the
/// ceiling.
class CountTable {
 public:
  CountTable(const CountingRule& rule, double gamma, double ceiling, double bin_width, const DpOptions& options = {});
  ~CountTable();
  CountTable(CountTable&&) noexcept;
  CountTable& operator=(CountTable&&) noexcept;

  /// Number of counted states with total area in [lo, hi] (edges within
  /// kValueTolerance included).
  BigCount count(double lo, double hi) const;

  /// Mean occupancy per spin among the states in [lo, hi]. Exact without
  /// projection; sampled with it. Requires track_occupancy.
  std::map<int, double> occupancy(double lo, double hi) const;

  std::size_t states() const;
  CountTier tier() const;
  double ceiling() const;
  const CountingRule& rule() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Binned DP count. Rejects bin_width > delta / 4 and bin widths that do not
/// fit twice into the smallest puncture area.
CountResult count_states_dp(const HorizonEnsemble& ensemble, const CountingRule& rule, const DpOptions& options = {});

/// Mean occupancy per spin among the counted states.
CountResult dominant_configuration(const HorizonEnsemble& ensemble, const CountingRule& rule,
                                   const DpOptions& options = {});

}  // namespace polymer::horizon
