#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "polymer/errors.hpp"
#include "polymer/horizon/counting.hpp"
#include "polymer/kernels/counting.hpp"

namespace polymer::horizon {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

// Exact area values reachable below the ceiling and the spin transitions
// between them, sorted by value.
struct Lattice {
  std::vector<double> values;
  std::vector<std::uint32_t> next;  // values.size() * channels
};

Lattice build_lattice(std::span<const SpinChannel> channels, double ceiling, double bin) {
  const std::size_t nk = channels.size();
  std::map<std::int64_t, std::vector<std::uint32_t>> bins;
  std::vector<double> raw;
  std::vector<std::uint32_t> raw_next;
  auto bin_of = [bin](double v) { return static_cast<std::int64_t>(std::floor(v / bin)); };
  auto find_or_add = [&](double v) -> std::uint32_t {
    const std::int64_t b = bin_of(v);
    for (std::int64_t nb = b - 1; nb <= b + 1; ++nb) {
      auto it = bins.find(nb);
      if (it == bins.end()) continue;
      for (std::uint32_t id : it->second) {
        if (std::abs(raw[id] - v) <= kValueTolerance) return id;
      }
    }
    const auto id = static_cast<std::uint32_t>(raw.size());
    raw.push_back(v);
    bins[b].push_back(id);
    return id;
  };

  find_or_add(0.0);
  // Every transition lands at least two bins further on, so the bin being
  // walked is never appended to and all its inputs are already known.
  for (auto it = bins.begin(); it != bins.end(); ++it) {
    for (std::size_t pos = 0; pos < it->second.size(); ++pos) {
      const std::uint32_t id = it->second[pos];
      raw_next.resize(raw.size() * nk, kNone);
      for (std::size_t i = 0; i < nk; ++i) {
        const double v = raw[id] + channels[i].quantum;
        if (v > ceiling + kValueTolerance) break;
        const std::uint32_t t = find_or_add(v);
        raw_next.resize(raw.size() * nk, kNone);
        raw_next[id * nk + i] = t;
      }
    }
  }
  raw_next.resize(raw.size() * nk, kNone);

  std::vector<std::uint32_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0u);
  std::ranges::sort(order, [&](std::uint32_t a, std::uint32_t b) { return raw[a] < raw[b]; });
  std::vector<std::uint32_t> rank(raw.size());
  for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  Lattice out;
  out.values.resize(raw.size());
  out.next.assign(raw.size() * nk, kNone);
  for (std::uint32_t r = 0; r < order.size(); ++r) {
    out.values[r] = raw[order[r]];
    for (std::size_t i = 0; i < nk; ++i) {
      const std::uint32_t t = raw_next[order[r] * nk + i];
      out.next[r * nk + i] = t == kNone ? kNone : rank[t];
    }
  }
  return out;
}

}  // namespace

struct CountTable::Impl {
  CountingRule rule;
  double gamma = 1.0;
  double ceiling = 0.0;
  DpOptions options;
  std::vector<SpinChannel> channels;
  Lattice lattice;
  CountTier tier = CountTier::machine_word;
  int mcap = 0;
  std::size_t width = 1;  // counts per state: one, or one per m-sum under projection

  std::vector<std::uint64_t> words;
  std::vector<BigCount> bigs;
  std::vector<std::uint64_t> occ_words;  // states * channels, no projection only
  std::vector<BigCount> occ_bigs;

  std::size_t nk() const { return channels.size(); }
  std::size_t states() const { return lattice.values.size(); }
  std::uint32_t next(std::size_t s, std::size_t i) const { return lattice.next[s * nk() + i]; }
  bool projected() const { return rule.projection; }
  bool unordered() const { return rule.ordering == Ordering::unordered; }

  std::uint64_t bound() const;
  template <class T>
  void run(std::vector<T>& cells, std::vector<T>* occ);
  std::pair<std::size_t, std::size_t> window(double lo, double hi) const;
  BigCount cell(std::size_t s, std::size_t j) const {
    return tier == CountTier::machine_word ? BigCount(words[s * width + j]) : bigs[s * width + j];
  }
  BigCount occ(std::size_t s, std::size_t i) const {
    return tier == CountTier::machine_word ? BigCount(occ_words[s * nk() + i]) : occ_bigs[s * nk() + i];
  }
  double cell_weight(std::size_t s, std::size_t j) const {
    return tier == CountTier::machine_word ? static_cast<double>(words[s * width + j])
                                           : bigs[s * width + j].convert_to<double>();
  }
  std::map<int, double> sampled_occupancy(double lo, double hi) const;
};

// Saturating count of unprojected ordered sequences, summed over every state,
// times the largest possible puncture number plus one. Below 2^63 every
// quantity the word tier forms is exact.
std::uint64_t CountTable::Impl::bound() const {
  std::vector<std::uint64_t> c(states(), 0);
  c[0] = 1;
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < states(); ++s) {
    total = sat_add(total, c[s]);
    if (c[s] == 0) continue;
    for (std::size_t i = 0; i < nk(); ++i) {
      const std::uint32_t t = next(s, i);
      if (t == kNone) break;
      c[t] = sat_add(c[t], sat_mul(c[s], channels[i].multiplicity));
    }
  }
  const auto depth = channels.empty() ? 0 : static_cast<std::uint64_t>(ceiling / channels.front().quantum) + 1;
  return sat_mul(total, depth + 1);
}

namespace {

// Arithmetic for the two tiers: the word tier wraps mod 2^64 through the
// vector kernels, the big tier is plain big-integer loops.
void axpy(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t m) {
  kernels::axpy_u64(dst, src, m);
}
void axpy(std::span<BigCount> dst, std::span<const BigCount> src, std::uint64_t m) {
  for (std::size_t i = 0; i < dst.size(); ++i) {
    if (src[i] != 0) dst[i] += src[i] * m;
  }
}
void add_difference(std::span<std::uint64_t> dst, std::span<const std::uint64_t> plus,
                    std::span<const std::uint64_t> minus) {
  kernels::add_difference_u64(dst, plus, minus);
}
void add_difference(std::span<BigCount> dst, std::span<const BigCount> plus, std::span<const BigCount> minus) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += plus[i] - minus[i];
}
bool is_zero(std::uint64_t v) { return v == 0; }
bool is_zero(const BigCount& v) { return v == 0; }

template <class T>
bool row_zero(std::span<const T> row) {
  return std::ranges::all_of(row, [](const T& v) { return is_zero(v); });
}

}  // namespace

template <class T>
void CountTable::Impl::run(std::vector<T>& cells, std::vector<T>* occ) {
  const std::size_t n = states();
  cells.assign(n * width, T(0));
  if (occ) occ->assign(n * nk(), T(0));
  cells[static_cast<std::size_t>(mcap)] = T(1);
  auto row = [&](std::vector<T>& v, std::size_t s, std::size_t w) { return std::span<T>(v.data() + s * w, w); };

  const int kmax = channels.empty() ? 0 : channels.back().twice_j;
  const std::size_t pad = static_cast<std::size_t>(kmax) + 2;
  std::vector<T> prefix(projected() ? width + 2 * pad : 0);
  auto build_prefix = [&](std::span<const T> src) {
    for (std::size_t p = 0; p < prefix.size(); ++p) {
      const bool inside = p >= pad && p - pad < width;
      prefix[p] = inside ? src[p - pad] : T(0);
      if (p >= 2) prefix[p] += prefix[p - 2];
    }
  };
  // dst[j] += sum of src[j - k], src[j - k + 2], ..., src[j + k]
  auto box = [&](std::span<T> dst, int k) {
    const std::size_t hi = pad + static_cast<std::size_t>(k);
    const std::size_t lo = pad - static_cast<std::size_t>(k) - 2;
    add_difference(dst, std::span<const T>(prefix.data() + hi, width), std::span<const T>(prefix.data() + lo, width));
  };

  if (!unordered()) {
    for (std::size_t s = 0; s < n; ++s) {
      const auto src = row(cells, s, width);
      if (row_zero<T>(src)) continue;
      if (projected()) build_prefix(src);
      for (std::size_t i = 0; i < nk(); ++i) {
        const std::uint32_t t = next(s, i);
        if (t == kNone) break;
        const auto m = channels[i].multiplicity;
        if (projected()) {
          box(row(cells, t, width), channels[i].twice_j);
        } else {
          axpy(row(cells, t, 1), std::span<const T>(src), m);
        }
        if (occ) {
          axpy(row(*occ, t, nk()), std::span<const T>(row(*occ, s, nk())), m);
          axpy(row(*occ, t, nk()).subspan(i, 1), std::span<const T>(src.data(), 1), m);
        }
      }
    }
    return;
  }

  // Unordered: one coin per puncture type, each swept once in ascending
  // order so a coin can be reused any number of times.
  for (std::size_t i = 0; i < nk(); ++i) {
    const int k = channels[i].twice_j;
    for (unsigned copy = 0; copy < channels[i].multiplicity; ++copy) {
      const int shift = projected() ? -k + 2 * static_cast<int>(copy) : 0;
      for (std::size_t s = 0; s < n; ++s) {
        const std::uint32_t t = next(s, i);
        if (t == kNone) continue;
        const auto src = row(cells, s, width);
        if (row_zero<T>(src)) continue;
        auto dst = row(cells, t, width);
        for (std::size_t j = 0; j < width; ++j) {
          const auto from = static_cast<std::ptrdiff_t>(j) - shift;
          if (from < 0 || from >= static_cast<std::ptrdiff_t>(width)) continue;
          dst[j] += src[static_cast<std::size_t>(from)];
        }
        if (occ) {
          axpy(row(*occ, t, nk()), std::span<const T>(row(*occ, s, nk())), 1);
          axpy(row(*occ, t, nk()).subspan(i, 1), std::span<const T>(src.data(), 1), 1);
        }
      }
    }
  }
}

CountTable::CountTable(const CountingRule& rule, double gamma, double ceiling, double bin_width,
                       const DpOptions& options)
    : impl_(std::make_unique<Impl>()) {
  validate_rule(rule);
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  if (!(bin_width > 0.0)) throw InvalidArgument("DP bin width must be positive");
  Impl& m = *impl_;
  m.rule = rule;
  m.gamma = gamma;
  m.ceiling = ceiling;
  m.options = options;
  m.channels = spin_channels(rule, gamma, ceiling);
  if (!m.channels.empty() && bin_width > m.channels.front().quantum / 3.0) {
    throw InvalidArgument("DP bin width must not exceed a third of the smallest puncture area");
  }
  m.lattice = build_lattice(m.channels, ceiling, bin_width);
  if (rule.projection) {
    m.mcap = static_cast<int>(std::floor(ceiling / (4.0 * std::numbers::pi * gamma)));
    m.width = 2 * static_cast<std::size_t>(m.mcap) + 1;
  }
  if (options.track_occupancy && rule.projection && rule.ordering == Ordering::unordered) {
    throw InvalidArgument("occupancy is not available for unordered counting with projection");
  }
  const bool exact_occ = options.track_occupancy && !rule.projection;
  m.tier = !options.force_bigint && m.bound() < (std::uint64_t{1} << 63) ? CountTier::machine_word
                                                                         : CountTier::big_integer;
  if (m.tier == CountTier::machine_word) {
    m.run(m.words, exact_occ ? &m.occ_words : nullptr);
  } else {
    m.run(m.bigs, exact_occ ? &m.occ_bigs : nullptr);
  }
}

CountTable::~CountTable() = default;
CountTable::CountTable(CountTable&&) noexcept = default;
CountTable& CountTable::operator=(CountTable&&) noexcept = default;

std::pair<std::size_t, std::size_t> CountTable::Impl::window(double lo, double hi) const {
  const auto& v = lattice.values;
  auto first = std::lower_bound(v.begin(), v.end(), lo - kValueTolerance);
  auto last = std::upper_bound(v.begin(), v.end(), hi + kValueTolerance);
  auto a = static_cast<std::size_t>(first - v.begin());
  const auto b = static_cast<std::size_t>(last - v.begin());
  if (a == 0) a = 1;  // the empty sequence is not a horizon state
  return {a, std::max(a, b)};
}

BigCount CountTable::count(double lo, double hi) const {
  const Impl& m = *impl_;
  if (hi > m.ceiling + kValueTolerance) throw InvalidArgument("count window reaches above the table ceiling");
  const auto [a, b] = m.window(lo, hi);
  BigCount total = 0;
  for (std::size_t s = a; s < b; ++s) total += m.cell(s, static_cast<std::size_t>(m.mcap));
  return total;
}

std::map<int, double> CountTable::Impl::sampled_occupancy(double lo, double hi) const {
  const auto [a, b] = window(lo, hi);
  std::vector<double> start(b - a);
  for (std::size_t s = a; s < b; ++s) start[s - a] = cell_weight(s, static_cast<std::size_t>(mcap));
  std::map<int, double> out;
  if (std::ranges::all_of(start, [](double w) { return w == 0.0; })) return out;

  std::mt19937_64 rng(options.seed);
  std::discrete_distribution<std::size_t> pick_start(start.begin(), start.end());
  std::vector<double> totals(nk(), 0.0);
  struct Move {
    std::size_t from;
    std::size_t channel;
    int m;
  };
  std::vector<Move> moves;
  std::vector<double> weights;
  const std::size_t samples = std::max<std::size_t>(options.occupancy_samples, 1);
  for (std::size_t n = 0; n < samples; ++n) {
    std::size_t s = a + pick_start(rng);
    int m2 = 0;
    while (s != 0) {
      moves.clear();
      weights.clear();
      for (std::size_t i = 0; i < nk(); ++i) {
        const double pv = lattice.values[s] - channels[i].quantum;
        if (pv < -kValueTolerance) break;
        auto it = std::lower_bound(lattice.values.begin(), lattice.values.end(), pv - kValueTolerance);
        for (; it != lattice.values.end() && *it <= pv + kValueTolerance; ++it) {
          const auto p = static_cast<std::size_t>(it - lattice.values.begin());
          if (next(p, i) != s) continue;
          const int k = channels[i].twice_j;
          for (int mm = -k; mm <= k; mm += 2) {
            const int j = m2 - mm + mcap;
            if (j < 0 || j >= static_cast<int>(width)) continue;
            const double w = cell_weight(p, static_cast<std::size_t>(j));
            if (w > 0.0) {
              moves.push_back({p, i, mm});
              weights.push_back(w);
            }
          }
        }
      }
      if (moves.empty()) throw std::logic_error("DP table has a state without predecessors");
      std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
      const Move mv = moves[pick(rng)];
      totals[mv.channel] += 1.0;
      s = mv.from;
      m2 -= mv.m;
    }
  }
  for (std::size_t i = 0; i < nk(); ++i) out[channels[i].twice_j] = totals[i] / static_cast<double>(samples);
  return out;
}

std::map<int, double> CountTable::occupancy(double lo, double hi) const {
  const Impl& m = *impl_;
  if (!m.options.track_occupancy) throw InvalidArgument("table was built without occupancy tracking");
  if (m.projected()) return m.sampled_occupancy(lo, hi);
  const auto [a, b] = m.window(lo, hi);
  BigCount total = 0;
  std::vector<BigCount> sums(m.nk(), 0);
  for (std::size_t s = a; s < b; ++s) {
    total += m.cell(s, 0);
    for (std::size_t i = 0; i < m.nk(); ++i) sums[i] += m.occ(s, i);
  }
  std::map<int, double> out;
  if (total == 0) return out;
  for (std::size_t i = 0; i < m.nk(); ++i) out[m.channels[i].twice_j] = ratio(sums[i], total);
  return out;
}

std::size_t CountTable::states() const { return impl_->states(); }
CountTier CountTable::tier() const { return impl_->tier; }
double CountTable::ceiling() const { return impl_->ceiling; }
const CountingRule& CountTable::rule() const { return impl_->rule; }

namespace {

double resolve_bin(const HorizonEnsemble& e, const CountingRule& rule, const DpOptions& options) {
  const auto channels = spin_channels(rule, e.gamma, e.upper());
  const double smallest = channels.empty() ? std::numeric_limits<double>::infinity() : channels.front().quantum;
  if (options.bin_width) {
    const double w = *options.bin_width;
    if (!(w > 0.0)) throw InvalidArgument("DP bin width must be positive");
    if (w > e.delta / 4.0) {
      std::ostringstream msg;
      msg << "DP bin width " << w << " is too coarse for delta " << e.delta << " (need bin <= delta/4)";
      throw InvalidArgument(msg.str());
    }
    return w;
  }
  return std::min(e.delta / 16.0, smallest / 4.0);
}

}  // namespace

CountResult count_states_dp(const HorizonEnsemble& ensemble, const CountingRule& rule, const DpOptions& options) {
  validate_ensemble(ensemble);
  const double bin = resolve_bin(ensemble, rule, options);
  const CountTable table(rule, ensemble.gamma, ensemble.upper(), bin, options);
  CountResult result;
  result.count = table.count(ensemble.lower(), ensemble.upper());
  result.rule = rule;
  result.ensemble = ensemble;
  result.method = table.tier() == CountTier::machine_word ? "dp/word" : "dp/bigint";
  if (options.track_occupancy) {
    result.occupancy = table.occupancy(ensemble.lower(), ensemble.upper());
    result.occupancy_sampled = rule.projection;
  }
  finish(result);
  return result;
}

CountResult dominant_configuration(const HorizonEnsemble& ensemble, const CountingRule& rule, const DpOptions& options) {
  DpOptions o = options;
  o.track_occupancy = true;
  return count_states_dp(ensemble, rule, o);
}

}  // namespace polymer::horizon
