#include "polymer/spectrum/area_spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "polymer/errors.hpp"
#include "polymer/spectrum/spin.hpp"

namespace polymer {

namespace {

struct Enumerator {
  std::span<const double> quanta;  // quanta[k-1] = area of one spin with 2j = k
  double cutoff;
  std::vector<double>* out;

  void descend(int max_k, double sum) const {
    out->push_back(sum);
    for (int k = 1; k <= max_k; ++k) {
      const double next = sum + quanta[k - 1];
      if (next >= cutoff) break;  // quanta increase with k
      descend(k, next);
    }
  }
};

}  // namespace

int default_max_twice_j(double cutoff, double gamma) {
  require_positive_gamma(gamma);
  const double smallest = kAreaPrefactor * gamma * std::numbers::sqrt3 / 2.0;
  return std::max(1, static_cast<int>(std::ceil(2.0 * cutoff / smallest)));
}

SpectrumTable enumerate_spectrum(const SpectrumOptions& options) {
  require_positive_gamma(options.gamma);
  if (!(options.cutoff > 0.0)) throw InvalidArgument("spectrum cutoff must be positive");
  if (!(options.tolerance > 0.0)) throw InvalidArgument("dedup tolerance must be positive");

  SpectrumTable table;
  table.gamma = options.gamma;
  table.cutoff = options.cutoff;
  table.dedup_tolerance = options.tolerance;
  table.max_twice_j = options.max_twice_j.value_or(default_max_twice_j(options.cutoff, options.gamma));
  if (table.max_twice_j < 1) throw InvalidArgument("max 2j must be at least 1");
  table.truncation_safe = puncture_area(SpinLabel(table.max_twice_j + 1), options.gamma) >= options.cutoff;

  std::vector<double> quanta(static_cast<std::size_t>(table.max_twice_j));
  for (int k = 1; k <= table.max_twice_j; ++k) quanta[k - 1] = puncture_area(SpinLabel(k), options.gamma);

  // One task per first spin; task k owns all multisets whose largest spin is k.
  const int tasks = table.max_twice_j;
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(tasks));
  std::atomic<int> next{1};
  auto worker = [&] {
    for (int k = next++; k <= tasks; k = next++) {
      if (quanta[k - 1] >= options.cutoff) continue;
      Enumerator e{quanta, options.cutoff, &partial[k - 1]};
      e.descend(k, quanta[k - 1]);
    }
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(tasks)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<double> values{0.0};
  for (const auto& p : partial) values.insert(values.end(), p.begin(), p.end());
  table.multisets = values.size();
  std::sort(values.begin(), values.end());

  table.eigenvalues.reserve(values.size());
  for (double v : values) {
    if (table.eigenvalues.empty() || v - table.eigenvalues.back() >= options.tolerance) {
      table.eigenvalues.push_back(v);
    }
  }
  return table;
}

std::vector<GapEntry> gap_statistics(const SpectrumTable& table) {
  const auto& ev = table.eigenvalues;
  if (ev.size() < 2) throw InvalidArgument("gap statistics need at least two eigenvalues");
  std::vector<GapEntry> gaps;
  gaps.reserve(ev.size() - 1);
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) gaps.push_back({ev[i], ev[i + 1] - ev[i]});
  return gaps;
}

CrowdingReport crowding_check(std::span<const GapEntry> gaps, double window_lo, double window_hi) {
  if (!(window_hi >= window_lo)) throw InvalidArgument("crowding window must satisfy lo <= hi");
  CrowdingReport report;
  report.window_lo = window_lo;
  report.window_hi = window_hi;
  for (const GapEntry& g : gaps) {
    if (g.area < window_lo || g.area > window_hi) continue;
    ++report.checked;
    // gap / exp(-sqrt(a)) computed in log space to stay finite at large a
    const double ratio = std::exp(std::log(g.gap) + std::sqrt(g.area));
    if (ratio > 1.0) ++report.violations;
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_area = g.area;
    }
  }
  std::ostringstream note;
  if (report.checked == 0) {
    report.vacuous = true;
    note << "no data in window [" << window_lo << ", " << window_hi << "]; check is vacuous";
  } else {
    note << "bound gap <= exp(-sqrt(a_n)) is asymptotic; window must lie past the pre-asymptotic regime";
  }
  report.note = note.str();
  report.passed = report.violations == 0;
  return report;
}

}  // namespace polymer
