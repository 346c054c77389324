#include <algorithm>
#include <cmath>
#include <sstream>

#include "polymer/errors.hpp"
#include "polymer/horizon/counting.hpp"

namespace polymer::horizon {

double estimate_configurations(const HorizonEnsemble& ensemble, const CountingRule& rule) {
  validate_ensemble(ensemble);
  const double hi = ensemble.upper();
  const auto channels = spin_channels(rule, ensemble.gamma, hi);
  if (channels.empty()) return 1.0;
  const double cell = channels.front().quantum / 8.0;
  const auto cells = static_cast<std::size_t>(std::floor((hi + kValueTolerance) / cell)) + 1;
  std::vector<double> nodes(cells, 0.0);
  nodes[0] = 1.0;
  double total = 0.0;
  for (std::size_t x = 0; x < cells; ++x) {
    total += nodes[x];
    for (const auto& ch : channels) {
      const auto step = static_cast<std::size_t>(std::floor(ch.quantum / cell));
      if (x + step >= cells) break;
      const double branches = rule.projection || rule.ordering == Ordering::unordered ? ch.multiplicity : 1.0;
      nodes[x + step] += branches * nodes[x];
    }
  }
  return total;
}

namespace {

struct Walker {
  std::vector<SpinChannel> channels;
  double lo = 0.0;
  double hi = 0.0;
  bool track = false;

  BigCount count;
  std::vector<BigCount> occupancy;  // sum over counted states of (weight * punctures of channel i)
  std::vector<unsigned> held;       // punctures of each channel on the current path

  void record(const BigCount& weight) {
    count += weight;
    if (!track) return;
    for (std::size_t i = 0; i < channels.size(); ++i) {
      if (held[i]) occupancy[i] += weight * held[i];
    }
  }

  // Ordered sequences, internal states folded into the weight.
  void ordered(double sum, const BigCount& weight) {
    for (std::size_t i = 0; i < channels.size(); ++i) {
      const double next = sum + channels[i].quantum;
      if (next > hi + kValueTolerance) break;
      const BigCount w = weight * channels[i].multiplicity;
      ++held[i];
      if (in_window(next, lo, hi)) record(w);
      ordered(next, w);
      --held[i];
    }
  }

  // Ordered sequences of (j, m) pairs; m in half-units ranges over -2j..2j step 2.
  void ordered_projected(double sum, int m2) {
    for (std::size_t i = 0; i < channels.size(); ++i) {
      const double next = sum + channels[i].quantum;
      if (next > hi + kValueTolerance) break;
      const int k = channels[i].twice_j;
      ++held[i];
      for (int m = -k; m <= k; m += 2) {
        if (m2 + m == 0 && in_window(next, lo, hi)) record(1);
        ordered_projected(next, m2 + m);
      }
      --held[i];
    }
  }

  // Multisets of puncture types; a type is (channel, internal state).
  struct Type {
    std::size_t channel;
    int m2;
  };
  std::vector<Type> types;
  bool projected = false;

  void unordered(std::size_t max_type, double sum, int m2) {
    for (std::size_t t = 0; t <= max_type && t < types.size(); ++t) {
      const auto& ty = types[t];
      const double next = sum + channels[ty.channel].quantum;
      if (next > hi + kValueTolerance) continue;
      const int nm = m2 + ty.m2;
      ++held[ty.channel];
      if (in_window(next, lo, hi) && (!projected || nm == 0)) record(1);
      unordered(t, next, nm);
      --held[ty.channel];
    }
  }
};

}  // namespace

CountResult count_states_exact(const HorizonEnsemble& ensemble, const CountingRule& rule, const ExactOptions& options) {
  validate_ensemble(ensemble);
  validate_rule(rule);
  const double estimate = estimate_configurations(ensemble, rule);
  if (estimate > options.budget) {
    std::ostringstream msg;
    msg << "exact enumeration would visit about " << estimate << " configurations (budget " << options.budget
        << "); use the DP counter";
    throw BudgetExceeded(msg.str());
  }

  Walker w;
  w.channels = spin_channels(rule, ensemble.gamma, ensemble.upper());
  w.lo = ensemble.lower();
  w.hi = ensemble.upper();
  w.track = options.track_occupancy;
  w.occupancy.assign(w.channels.size(), 0);
  w.held.assign(w.channels.size(), 0);

  if (rule.ordering == Ordering::unordered) {
    w.projected = rule.projection;
    for (std::size_t i = 0; i < w.channels.size(); ++i) {
      const int k = w.channels[i].twice_j;
      for (unsigned s = 0; s < w.channels[i].multiplicity; ++s) {
        w.types.push_back({i, rule.projection ? -k + 2 * static_cast<int>(s) : 0});
      }
    }
    if (!w.types.empty()) w.unordered(w.types.size() - 1, 0.0, 0);
  } else if (rule.projection) {
    w.ordered_projected(0.0, 0);
  } else {
    w.ordered(0.0, 1);
  }

  CountResult result;
  result.count = w.count;
  result.rule = rule;
  result.ensemble = ensemble;
  result.method = "exact";
  if (w.track && w.count > 0) {
    for (std::size_t i = 0; i < w.channels.size(); ++i) {
      result.occupancy[w.channels[i].twice_j] = ratio(w.occupancy[i], w.count);
    }
  }
  finish(result);
  return result;
}

}  // namespace polymer::horizon
