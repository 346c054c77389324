#include "dispatch.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "commands.hpp"
#include "polymer/errors.hpp"

namespace polymer::cli {

std::string nearest(const std::string& word, const std::vector<std::string>& candidates) {
  auto distance = [](const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      cur[0] = i;
      for (std::size_t j = 1; j <= b.size(); ++j) {
        cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
      }
      std::swap(prev, cur);
    }
    return prev[b.size()];
  };
  std::string best;
  std::size_t best_d = std::max<std::size_t>(3, word.size() / 2) + 1;
  for (const auto& c : candidates) {
    const std::size_t d = distance(word, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

namespace {

std::vector<std::string> long_flags(const CLI::App& app) {
  std::vector<std::string> out;
  for (const CLI::Option* opt : app.get_options()) {
    for (const auto& name : opt->get_lnames()) out.push_back("--" + name);
  }
  return out;
}

// Checks every --flag against the subcommand and global flags before CLI11
// sees them, so a typo gets a suggestion instead of a bare rejection.
bool unknown_flag(const CLI::App& app, const std::vector<std::string>& args, std::ostream& err) {
  const CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (a.rfind("-", 0) == 0) continue;
    for (const CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; })) {
      if (s->get_name() == a) sub = s;
    }
    if (sub) break;
  }
  std::vector<std::string> valid = long_flags(app);
  if (sub) {
    const auto more = long_flags(*sub);
    valid.insert(valid.end(), more.begin(), more.end());
  }
  for (const auto& a : args) {
    if (a.rfind("--", 0) != 0 || a == "--") continue;
    const std::string flag = a.substr(0, a.find('='));
    if (std::ranges::find(valid, flag) != valid.end()) continue;
    err << "error: unknown flag " << flag;
    const std::string guess = nearest(flag, valid);
    if (!guess.empty()) err << "; did you mean " << guess << "?";
    err << '\n';
    return true;
  }
  return false;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Loop quantum gravity numerics: area spectrum, cosmology recurrence, horizon state counting"};
  app.name("polymer");
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--out", g.out, "Output file (CSV or report); stdout when omitted")->envname("POLYMER_OUT");
  app.add_option("--seed", g.seed, "Seed for sampled quantities")->envname("POLYMER_SEED");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u))->envname("POLYMER_THREADS");

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Enumerate the area spectrum below a cutoff");
  spectrum->add_option("--gamma", sa.gamma, "Barbero-Immirzi parameter")->envname("POLYMER_GAMMA");
  spectrum->add_option("--cutoff", sa.cutoff, "Area cutoff in Planck units")->envname("POLYMER_CUTOFF");
  spectrum->add_option("--tol", sa.tol, "Merge tolerance for equal eigenvalues")->envname("POLYMER_TOL");
  spectrum->add_option("--max-twice-j", sa.max_twice_j, "Largest 2j (default: lossless cap)");
  spectrum->add_option("--crowding-window", sa.crowding_window, "lo:hi window of the gap bound check");

  CosmoArgs ca;
  auto* cosmo = app.add_subcommand("cosmo", "Validate a cosmology model, evolve, select the pre-classical solution");
  cosmo->add_option("--model", ca.model, "Model JSON file")->required()->envname("POLYMER_MODEL");
  cosmo->add_option("--range", ca.range, "n_min:n_max (default: model range)");
  cosmo->add_flag("--select-preclassical", ca.select, "Select the least oscillating solution");
  cosmo->add_option("--window", ca.window, "lo:hi late-time window (default: upper quarter)");
  cosmo->add_option("--negative-window", ca.negative_window, "lo:hi window on the negative side");
  cosmo->add_flag("--validate", ca.validate, "Run the model checks; exit 2 on failure");
  cosmo->add_option("--policy", ca.policy, "Decoupled levels: skip or zero")->check(CLI::IsMember({"skip", "zero"}));

  EntropyArgs ea;
  auto* entropy = app.add_subcommand("entropy", "Count horizon states and fit the entropy");
  entropy->add_option("--gamma", ea.gamma, "Barbero-Immirzi parameter")->envname("POLYMER_GAMMA");
  auto* area = entropy->add_option("--area", ea.area, "Horizon area");
  auto* sweep = entropy->add_option("--area-sweep", ea.sweep, "lo:hi:steps, evenly spaced");
  area->excludes(sweep);
  entropy->add_option("--delta", ea.delta, "Half-width of the area window (default max(1, sqrt a)/10)");
  entropy->add_option("--rule", ea.rule, "Counting rule")->check(CLI::IsMember({"r1", "r2", "r3"}))->envname("POLYMER_RULE");
  entropy->add_flag("--projection", ea.projection, "Impose sum m = 0 (r3)");
  entropy->add_option("--bin", ea.bin, "DP bin width (default delta/16)");
  entropy->add_option("--method", ea.method, "dp or exact")->check(CLI::IsMember({"dp", "exact"}))->envname("POLYMER_METHOD");
  entropy->add_flag("--unordered", ea.unordered, "Indistinguishable punctures");
  entropy->add_flag("--quantized", ea.quantized, "Snap areas to multiples of the smallest area quantum");
  entropy->add_option("--max-twice-j", ea.max_twice_j, "Spin cap 2j");
  entropy->add_flag("--occupancy", ea.occupancy, "Record mean occupancy per spin");

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Summarize runs from their .meta.json files");
  report->add_option("--in", ra.inputs, "Run metadata files");

  if (unknown_flag(app, args, err)) return kUsageError;

  std::vector<std::string> storage{"polymer"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(g, sa, out);
    if (cosmo->parsed()) return run_cosmo(g, ca, out);
    if (entropy->parsed()) {
      if (!ea.area && ea.sweep.empty()) throw InvalidArgument("entropy needs --area or --area-sweep");
      return run_entropy(g, ea, out);
    }
    if (report->parsed()) return run_report(g, ra, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ModelFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace polymer::cli
