#include "polymer/horizon/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polymer/errors.hpp"
#include "polymer/spectrum/spin.hpp"

namespace polymer::horizon {

std::string rule_name(const CountingRule& rule) {
  std::string name = rule.id == RuleId::r1 ? "r1" : rule.id == RuleId::r2 ? "r2" : "r3";
  if (rule.projection) name += "+projection";
  if (rule.ordering == Ordering::unordered) name += "/unordered";
  return name;
}

RuleId parse_rule_id(std::string_view text) {
  if (text == "r1" || text == "R1") return RuleId::r1;
  if (text == "r2" || text == "R2") return RuleId::r2;
  if (text == "r3" || text == "R3") return RuleId::r3;
  throw InvalidArgument("unknown counting rule '" + std::string(text) + "', expected r1, r2 or r3");
}

void validate_rule(const CountingRule& rule) {
  if (rule.projection && rule.id != RuleId::r3) throw InvalidArgument("the projection constraint applies to r3 only");
  if (rule.max_twice_j && *rule.max_twice_j < 1) throw InvalidArgument("spin cap 2j must be at least 1");
}

double default_delta(double area) { return std::max(1.0, std::sqrt(std::max(area, 0.0))) / 10.0; }

void validate_ensemble(const HorizonEnsemble& e) {
  require_positive_gamma(e.gamma);
  if (!std::isfinite(e.area) || !std::isfinite(e.delta)) throw InvalidArgument("ensemble area and delta must be finite");
  if (!(e.delta > 0.0)) throw InvalidArgument("ensemble half-width delta must be positive");
  if (!(e.area - e.delta > 0.0)) throw InvalidArgument("ensemble needs area - delta > 0");
}

std::vector<SpinChannel> spin_channels(const CountingRule& rule, double gamma, double max_area) {
  validate_rule(rule);
  std::vector<SpinChannel> out;
  const int cap = rule.id == RuleId::r1 ? 1 : rule.max_twice_j.value_or(std::numeric_limits<int>::max());
  for (int k = 1; k <= cap; ++k) {
    const double q = puncture_area(SpinLabel(k), gamma);
    if (q > max_area + kValueTolerance) break;
    const unsigned mult = rule.id == RuleId::r3 ? static_cast<unsigned>(k + 1) : 2u;
    out.push_back({k, q, mult});
  }
  return out;
}

void finish(CountResult& result) { result.entropy = log_count(result.count); }

std::map<int, double> occupancy_fractions(const CountResult& result) {
  double total = 0.0;
  for (const auto& [k, v] : result.occupancy) total += v;
  std::map<int, double> out;
  if (total <= 0.0) return out;
  for (const auto& [k, v] : result.occupancy) out[k] = v / total;
  return out;
}

}  // namespace polymer::horizon
