#include <cmath>
#include <limits>
#include <ostream>

#include "commands.hpp"
#include "dispatch.hpp"
#include "polymer/cosmo/evolver.hpp"
#include "polymer/cosmo/model.hpp"
#include "polymer/cosmo/preclassical.hpp"
#include "polymer/cosmo/validation.hpp"
#include "polymer/errors.hpp"
#include "polymer/io/csv.hpp"
#include "polymer/io/report.hpp"

namespace polymer::cli {

namespace {

cosmo::Window parse_window(const std::string& text, const char* what) {
  const auto [lo, hi] = parse_pair(text, what);
  if (lo != std::floor(lo) || hi != std::floor(hi)) throw InvalidArgument(std::string(what) + " needs integer levels");
  return {static_cast<int>(lo), static_cast<int>(hi)};
}

std::string window_text(cosmo::Window w) { return std::to_string(w.lo) + ":" + std::to_string(w.hi); }

}  // namespace

int run_cosmo(const Globals& g, const CosmoArgs& a, std::ostream& out) {
  using namespace cosmo;
  const CoefficientModel model = load_model(a.model);

  io::RunMeta meta;
  meta.engine = "cosmo";
  meta.parameters = {{"model", a.model},  {"gamma", model.gamma()}, {"policy", a.policy},
                     {"validate", a.validate}, {"select_preclassical", a.select},
                     {"seed", g.seed},          {"threads", g.threads}};

  if (a.validate) {
    const ValidationReport report = validate_model(model);
    for (const auto& c : report.checks) {
      out << "# " << c.name << ": " << status_name(c.status) << "  " << c.detail << '\n';
      meta.checks.push_back({c.name, status_name(c.status), c.detail});
    }
    if (!report.passed()) {
      out << "# model rejected\n";
      if (!g.out.empty()) io::write_meta(io::meta_path_for(g.out), meta);
      return kValidationFailed;
    }
  }

  int lo = model.n_min();
  int hi = model.n_max();
  if (!a.range.empty()) {
    const Window r = parse_window(a.range, "--range");
    if (r.lo < model.n_min() || r.hi > model.n_max()) throw InvalidArgument("--range lies outside the model levels");
    lo = r.lo;
    hi = r.hi;
  }
  if (hi - lo < 31) throw InvalidArgument("range must hold at least 32 levels");
  meta.parameters["range"] = {lo, hi};

  EvolveOptions opts;
  opts.policy = a.policy == "zero" ? DecouplingPolicy::zero : DecouplingPolicy::skip;
  const MatterModel matter = MatterModel::vacuum();

  WaveFunction psi(lo, hi);
  std::vector<int> decoupled;
  if (a.select) {
    const Window win = a.window.empty() ? default_late_window(hi) : parse_window(a.window, "--window");
    if (win.lo < lo || win.hi + 4 > hi) throw InvalidArgument("--window must sit inside the range with n + 4 <= hi");
    const SolutionBasis basis = solution_basis(model, matter, lo, hi, {}, opts);
    const PreclassicalSelection sel = select_preclassical(basis, win);
    psi = sel.psi;
    meta.parameters["window"] = window_text(win);
    meta.results["basis_dimension"] = basis.dimension;
    meta.results["lowest_measure"] = sel.lowest;
    meta.results["second_measure"] = sel.second;

    const Window neg = a.negative_window.empty() ? Window{-win.hi, -win.lo}
                                                 : parse_window(a.negative_window, "--negative-window");
    const ScanReport scan = preclassicality_scan(psi, neg, win);
    meta.parameters["negative_window"] = window_text(neg);
    if (scan.positive) meta.results["oscillation_positive"] = *scan.positive;
    if (scan.negative) meta.results["oscillation_negative"] = *scan.negative;
    meta.checks.push_back({"preclassicality_scan", "info", scan.note.empty() ? "both windows measured" : scan.note});
  } else {
    WaveFunction seed(hi - 15, hi);
    for (int n = hi - 15; n <= hi; ++n) seed.set(n, 1.0);
    Evolution ev = evolve(seed, model, matter, hi, lo, Direction::backward, opts);
    psi = std::move(ev.psi);
    decoupled = ev.decoupled_levels;
  }
  meta.results["decoupled_levels"] = decoupled;

  io::CsvTable csv({"n", "re_psi", "im_psi", "log_scale"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int n = lo; n <= hi; ++n) {
    const bool known = psi.determined(n);
    const Amplitude v = known ? psi[n] : Amplitude(nan, nan);
    csv.add_row({std::to_string(n), io::format_real(v.real()), io::format_real(v.imag()),
                 io::format_real(psi.log_scale(residue_of(n)))});
  }
  emit(g.out, csv.text(), out);
  if (!g.out.empty()) {
    meta.outputs.push_back(g.out);
    io::write_meta(io::meta_path_for(g.out), meta);
  }
  return kOk;
}

}  // namespace polymer::cli
