#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polymer/horizon/big_count.hpp"

namespace polymer::horizon {

/// R1: j = 1/2 only, 2 states per puncture. R2: all spins, 2 states each.
/// R3: all spins, 2j+1 states each, optionally restricted to sum m = 0.
enum class RuleId { r1, r2, r3 };

/// Punctures are distinguishable (ordered sequences) unless unordered is asked for.
enum class Ordering { ordered, unordered };

struct CountingRule {
  RuleId id = RuleId::r1;
  std::optional<int> max_twice_j;  ///< spin cap; defaults to the area budget
  bool projection = false;         ///< R3 only
  Ordering ordering = Ordering::ordered;

  static CountingRule r1() { return with(RuleId::r1); }
  static CountingRule r2() { return with(RuleId::r2); }
  static CountingRule r3(bool projection = false) {
    CountingRule r = with(RuleId::r3);
    r.projection = projection;
    return r;
  }
  static CountingRule with(RuleId id) {
    CountingRule r;
    r.id = id;
    return r;
  }
};

/// "r1", "r2", "r3", "r3+projection", with "/unordered" appended when relevant.
std::string rule_name(const CountingRule& rule);
RuleId parse_rule_id(std::string_view text);
void validate_rule(const CountingRule& rule);

/// Area window [area - delta, area + delta] at a given gamma. Angular
/// momentum and charges are carried as labels only.
struct HorizonEnsemble {
  double area = 0.0;
  double delta = 0.0;
  double gamma = 1.0;
  double angular_momentum = 0.0;
  std::vector<double> charges;

  double lower() const noexcept { return area - delta; }
  double upper() const noexcept { return area + delta; }
};

/// max(1, sqrt(a)) / 10.
double default_delta(double area);

/// Throws InvalidArgument unless delta > 0, gamma > 0 and area - delta > 0.
void validate_ensemble(const HorizonEnsemble& ensemble);

/// Sums within this distance of each other are one value; a sum within it of
/// a window edge counts as inside.
inline constexpr double kValueTolerance = 1e-9;

inline bool in_window(double value, double lo, double hi) noexcept {
  return value >= lo - kValueTolerance && value <= hi + kValueTolerance;
}

/// One allowed puncture spin: its area quantum and the number of internal
/// states it carries.
struct SpinChannel {
  int twice_j = 1;
  double quantum = 0.0;
  unsigned multiplicity = 2;
};

/// Spins the rule admits whose single-puncture area does not exceed max_area.
std::vector<SpinChannel> spin_channels(const CountingRule& rule, double gamma, double max_area);

struct CountResult {
  BigCount count;
  std::optional<double> entropy;  ///< ln N; empty when N = 0
  /// Mean number of punctures of each spin (keyed by 2j) among counted states.
  std::map<int, double> occupancy;
  bool occupancy_sampled = false;
  CountingRule rule;
  HorizonEnsemble ensemble;
  std::string method;
};

/// Fills `entropy` from `count`.
void finish(CountResult& result);

/// Occupancy normalized to fractions summing to 1 (empty if nothing counted).
std::map<int, double> occupancy_fractions(const CountResult& result);

}  // namespace polymer::horizon
