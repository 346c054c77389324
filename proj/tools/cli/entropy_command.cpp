#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "commands.hpp"
#include "polymer/errors.hpp"
#include "polymer/horizon/counting.hpp"
#include "polymer/horizon/fits.hpp"
#include "polymer/io/csv.hpp"
#include "polymer/io/report.hpp"

namespace polymer::cli {

namespace {

using namespace horizon;

std::vector<double> sample_areas(const EntropyArgs& a, double quantum) {
  std::vector<double> areas;
  if (a.area) {
    areas.push_back(*a.area);
  } else {
    const Sweep s = parse_sweep(a.sweep);
    for (int i = 0; i < s.steps; ++i) {
      areas.push_back(s.steps == 1 ? s.lo : s.lo + (s.hi - s.lo) * i / (s.steps - 1));
    }
  }
  if (a.quantized) {
    for (double& x : areas) x = std::max(1.0, std::round(x / quantum)) * quantum;
    areas.erase(std::unique(areas.begin(), areas.end()), areas.end());
  }
  return areas;
}

BigCount r1_closed_form(const HorizonEnsemble& e, double quantum) {
  BigCount total = 0;
  const auto first = static_cast<long>(std::max(1.0, std::ceil((e.lower() - kValueTolerance) / quantum)));
  for (long n = first; in_window(static_cast<double>(n) * quantum, e.lower(), e.upper()); ++n) {
    total += BigCount(1) << n;
  }
  return total;
}

}  // namespace

int run_entropy(const Globals& g, const EntropyArgs& a, std::ostream& out) {
  if (!(a.gamma > 0.0) || !std::isfinite(a.gamma)) throw InvalidArgument("--gamma must be positive");
  CountingRule rule = CountingRule::with(parse_rule_id(a.rule));
  rule.projection = a.projection;
  rule.max_twice_j = a.max_twice_j;
  if (a.unordered) rule.ordering = Ordering::unordered;
  validate_rule(rule);

  const double quantum = 4.0 * std::numbers::sqrt3 * std::numbers::pi * a.gamma;
  const std::vector<double> areas = sample_areas(a, quantum);

  std::vector<HorizonEnsemble> ensembles;
  for (double area : areas) {
    HorizonEnsemble e;
    e.area = area;
    e.gamma = a.gamma;
    e.delta = a.delta ? *a.delta : default_delta(area);
    validate_ensemble(e);
    ensembles.push_back(e);
  }

  std::vector<CountResult> results;
  if (a.method == "exact") {
    ExactOptions opts;
    opts.track_occupancy = a.occupancy;
    for (const auto& e : ensembles) results.push_back(count_states_exact(e, rule, opts));
  } else {
    DpOptions opts;
    opts.bin_width = a.bin;
    opts.track_occupancy = a.occupancy;
    opts.seed = g.seed;
    if (ensembles.size() == 1) {
      results.push_back(count_states_dp(ensembles.front(), rule, opts));
    } else {
      double min_delta = std::numeric_limits<double>::infinity();
      double ceiling = 0.0;
      for (const auto& e : ensembles) {
        min_delta = std::min(min_delta, e.delta);
        ceiling = std::max(ceiling, e.upper());
      }
      const auto channels = spin_channels(rule, a.gamma, ceiling);
      const double smallest = channels.empty() ? quantum : channels.front().quantum;
      double bin = std::min(min_delta / 16.0, smallest / 4.0);
      if (a.bin) {
        if (!(*a.bin > 0.0) || *a.bin > min_delta / 4.0) throw InvalidArgument("--bin must be in (0, delta/4]");
        bin = *a.bin;
      }
      const CountTable table(rule, a.gamma, ceiling, bin, opts);
      for (const auto& e : ensembles) {
        CountResult r;
        r.count = table.count(e.lower(), e.upper());
        r.rule = rule;
        r.ensemble = e;
        r.method = table.tier() == CountTier::machine_word ? "dp/word" : "dp/bigint";
        if (a.occupancy) {
          r.occupancy = table.occupancy(e.lower(), e.upper());
          r.occupancy_sampled = rule.projection;
        }
        finish(r);
        results.push_back(std::move(r));
      }
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  io::CsvTable csv({"area", "count_digits", "entropy", "slope_running", "implied_gamma0"});
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  std::vector<double> fit_a, fit_s;
  for (const auto& r : results) {
    double slope = nan;
    if (r.entropy) {
      const double x = r.ensemble.area, y = *r.entropy;
      fit_a.push_back(x);
      fit_s.push_back(y);
      ++k;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      const double den = k * sxx - sx * sx;
      if (k >= 2 && den > 0.0) slope = (k * sxy - sx * sy) / den;
    }
    csv.add_row({io::format_real(r.ensemble.area), std::to_string(decimal_digits(r.count)),
                 io::format_real(r.entropy.value_or(nan)), io::format_real(slope),
                 io::format_real(std::isnan(slope) ? nan : implied_gamma0(slope, a.gamma))});
  }
  emit(g.out, csv.text(), out);

  io::RunMeta meta;
  meta.engine = "entropy";
  meta.parameters = {{"gamma", a.gamma}, {"rule", rule_name(rule)}, {"method", a.method},
                     {"areas", areas},   {"quantized", a.quantized}, {"seed", g.seed},
                     {"threads", g.threads}, {"unordered", a.unordered}, {"occupancy", a.occupancy}};
  if (a.max_twice_j) meta.parameters["max_twice_j"] = *a.max_twice_j;
  if (a.delta) meta.parameters["delta"] = *a.delta;
  if (a.bin) meta.parameters["bin"] = *a.bin;
  meta.results["method"] = results.empty() ? "" : results.front().method;
  std::vector<std::string> counts;
  for (const auto& r : results) counts.push_back(format_count(r.count, 200));
  meta.results["counts"] = counts;
  if (a.occupancy && !results.empty()) {
    nlohmann::json occ = nlohmann::json::object();
    for (const auto& [tj, f] : occupancy_fractions(results.back())) occ[std::to_string(tj)] = f;
    meta.results["occupancy_fractions_last"] = occ;
    meta.results["occupancy_sampled"] = results.back().occupancy_sampled;
  }

  const double g0 = gamma0_reference();
  const double amax = fit_a.empty() ? 0.0 : *std::ranges::max_element(fit_a);
  const double amin = fit_a.empty() ? 0.0 : *std::ranges::min_element(fit_a);
  if (fit_a.size() >= 10 && amin > 0.0 && amax / amin >= 4.0) {
    const SlopeFit fit = entropy_slope_fit(fit_a, fit_s, a.gamma);
    meta.results["slope"] = fit.slope;
    meta.results["intercept"] = fit.intercept;
    meta.results["implied_gamma0"] = fit.implied_gamma0;
    meta.results["gamma0_relative_deviation"] = (fit.implied_gamma0 - g0) / g0;
    meta.checks.push_back({"slope_fit", "info",
                           "implied gamma0 " + io::format_real(fit.implied_gamma0) + " vs ln2/(sqrt3 pi) " +
                               io::format_real(g0)});
  } else {
    meta.checks.push_back({"slope_fit", "skipped", "needs 10 nonzero counts spanning a factor 4 in area"});
  }

  if (rule.ordering == Ordering::ordered) {
    const double s = asymptotic_slope(rule, a.gamma);
    const SolarExtrapolation solar = extrapolate_solar(s, a.gamma);
    meta.results["asymptotic_slope"] = s;
    meta.results["asymptotic_implied_gamma0"] = implied_gamma0(s, a.gamma);
    meta.results["solar"] = {{"area", solar.area}, {"entropy", solar.entropy}, {"punctures", solar.punctures},
                             {"label", solar.label}};
  }

  if (rule.id == RuleId::r1 && rule.ordering == Ordering::ordered) {
    bool all = true;
    for (const auto& r : results) all = all && r.count == r1_closed_form(r.ensemble, quantum);
    meta.checks.push_back({"r1_closed_form", all ? "pass" : "fail", "N = sum of 2^n over n with n a_1 in the window"});
  }

  if (!g.out.empty()) {
    meta.outputs.push_back(g.out);
    io::write_meta(io::meta_path_for(g.out), meta);
  }
  return 0;
}

}  // namespace polymer::cli
