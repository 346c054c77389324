#include <cmath>
#include <numbers>
#include <ostream>

#include "commands.hpp"
#include "polymer/errors.hpp"
#include "polymer/io/csv.hpp"
#include "polymer/io/report.hpp"
#include "polymer/spectrum/area_spectrum.hpp"

namespace polymer::cli {

int run_spectrum(const Globals& g, const SpectrumArgs& a, std::ostream& out) {
  if (!(a.gamma > 0.0)) throw InvalidArgument("--gamma must be positive");
  if (!(a.cutoff > 0.0)) throw InvalidArgument("--cutoff must be positive");
  if (!(a.tol > 0.0)) throw InvalidArgument("--tol must be positive");
  if (a.max_twice_j && *a.max_twice_j < 1) throw InvalidArgument("--max-twice-j must be at least 1");
  const auto [lo, hi] = parse_pair(a.crowding_window, "--crowding-window");

  SpectrumOptions opts;
  opts.gamma = a.gamma;
  opts.cutoff = a.cutoff;
  opts.tolerance = a.tol;
  opts.max_twice_j = a.max_twice_j;
  opts.threads = g.threads;
  const SpectrumTable table = enumerate_spectrum(opts);

  io::CsvTable csv({"index", "area", "gap"});
  for (std::size_t i = 0; i < table.eigenvalues.size(); ++i) {
    const bool last = i + 1 == table.eigenvalues.size();
    csv.add_row({std::to_string(i), io::format_real(table.eigenvalues[i]),
                 last ? std::string() : io::format_real(table.eigenvalues[i + 1] - table.eigenvalues[i])});
  }
  emit(g.out, csv.text(), out);

  io::RunMeta meta;
  meta.engine = "spectrum";
  meta.parameters = {{"gamma", a.gamma},       {"cutoff", a.cutoff},           {"tolerance", a.tol},
                     {"max_twice_j", table.max_twice_j}, {"crowding_window", {lo, hi}}, {"threads", g.threads},
                     {"seed", g.seed}};

  const double expected = 4.0 * std::numbers::pi * a.gamma * std::sqrt(3.0);
  const bool has_lowest = table.eigenvalues.size() > 1;
  const double lowest = has_lowest ? table.eigenvalues[1] : 0.0;
  io::Verdict first{"lowest_eigenvalue", "skipped", "no nonzero eigenvalue below the cutoff"};
  if (has_lowest) {
    const bool ok = std::abs(lowest - expected) <= 1e-12 * expected;
    first = {"lowest_eigenvalue", ok ? "pass" : "fail",
             "a_1 = " + io::format_real(lowest) + ", 4 sqrt(3) pi gamma = " + io::format_real(expected)};
  }
  meta.checks.push_back(first);

  if (table.eigenvalues.size() >= 2) {
    const auto gaps = gap_statistics(table);
    const CrowdingReport cr = crowding_check(gaps, lo, hi);
    std::string detail = cr.vacuous ? cr.note
                                    : std::to_string(cr.violations) + " of " + std::to_string(cr.checked) +
                                          " gaps above exp(-sqrt a), worst ratio " + io::format_real(cr.worst_ratio) +
                                          " at a = " + io::format_real(cr.worst_area);
    meta.checks.push_back({"crowding", cr.passed ? "pass" : "info", detail});
    meta.results["crowding"] = {{"checked", cr.checked}, {"violations", cr.violations},
                                {"worst_ratio", cr.worst_ratio}, {"vacuous", cr.vacuous}};
  }
  meta.checks.push_back({"truncation_safe", table.truncation_safe ? "pass" : "fail",
                         table.truncation_safe ? "spin cap loses no eigenvalue"
                                               : "spin cap below the cutoff; eigenvalues may be missing"});
  meta.results["eigenvalues"] = table.eigenvalues.size();
  meta.results["multisets"] = table.multisets;
  if (has_lowest) meta.results["lowest_nonzero"] = lowest;

  if (!g.out.empty()) {
    meta.outputs.push_back(g.out);
    io::write_meta(io::meta_path_for(g.out), meta);
  }
  return 0;
}

}  // namespace polymer::cli
