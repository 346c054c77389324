#include "polymer/cosmo/evolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "polymer/errors.hpp"
#include "polymer/kernels/recurrence.hpp"

namespace polymer::cosmo {

namespace {

// psi values of several wave functions as real lanes: lane 2s holds Re psi_s,
// lane 2s+1 holds Im psi_s, one row per level.
class LaneTable {
 public:
  LaneTable(int lo, int hi, std::size_t seeds)
      : lo_(lo), lanes_(2 * seeds), data_(static_cast<std::size_t>(hi - lo + 1) * lanes_, 0.0) {}

  std::span<double> row(int n) { return {data_.data() + offset(n), lanes_}; }
  std::span<const double> row(int n) const { return {data_.data() + offset(n), lanes_}; }
  std::size_t lanes() const noexcept { return lanes_; }

 private:
  std::size_t offset(int n) const { return static_cast<std::size_t>(n - lo_) * lanes_; }

  int lo_;
  std::size_t lanes_;
  std::vector<double> data_;
};

[[noreturn]] void singular(const char* which, int n) {
  throw SingularModel(std::string(which) + " vanishes at undeclared level " + std::to_string(n), n);
}

void require_levels(const CoefficientModel& model, int lo, int hi) {
  if (!model.contains(lo) || !model.contains(hi)) {
    throw InvalidArgument("evolution needs coefficients on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "], model covers [" + std::to_string(model.n_min()) + ", " +
                          std::to_string(model.n_max()) + "]");
  }
}

double solve_component(const kernels::StepWeights& w, double x0, double r1, double r2, double r3, double r4) {
  double t = w.rhs * x0;
  t -= w.w1 * r1;
  t -= w.w2 * r2;
  t -= w.w3 * r3;
  t -= w.w4 * r4;
  return t / w.divisor;
}

Amplitude solve(const kernels::StepWeights& w, Amplitude x0, Amplitude r1, Amplitude r2, Amplitude r3, Amplitude r4) {
  return {solve_component(w, x0.real(), r1.real(), r2.real(), r3.real(), r4.real()),
          solve_component(w, x0.imag(), r1.imag(), r2.imag(), r3.imag(), r4.imag())};
}

}  // namespace

Amplitude step_backward(const WaveFunction& psi, const CoefficientModel& model, const MatterModel& matter, int n) {
  const Coefficients co = model.at(n);
  if (co.g == 0.0) {
    if (model.is_decoupled(n)) throw DecoupledLevel("g vanishes at declared decoupling level " + std::to_string(n), n);
    singular("g", n);
  }
  const kernels::StepWeights w{model.gamma() * matter.h(n), co.c, co.d, co.e, co.f, co.g};
  return solve(w, psi[n], psi[n + 8], psi[n + 4], psi[n], psi[n - 4]);
}

Amplitude step_forward(const WaveFunction& psi, const CoefficientModel& model, const MatterModel& matter, int n) {
  const Coefficients co = model.at(n);
  if (co.c == 0.0) {
    if (model.is_decoupled(n)) throw DecoupledLevel("c vanishes at declared decoupling level " + std::to_string(n), n);
    singular("c", n);
  }
  const kernels::StepWeights w{model.gamma() * matter.h(n), co.d, co.e, co.f, co.g, co.c};
  return solve(w, psi[n], psi[n + 4], psi[n], psi[n - 4], psi[n - 8]);
}

std::vector<Evolution> evolve_batch(std::span<const WaveFunction> seeds, const CoefficientModel& model,
                                    const MatterModel& matter, int from_n, int to_n, Direction direction,
                                    const EvolveOptions& options) {
  const bool back = direction == Direction::backward;
  const int lo = back ? to_n : from_n;
  const int hi = back ? from_n : to_n;
  if (hi - lo < 15) throw InvalidArgument("evolution range must span at least the 16 seed levels");
  const int seed_lo = back ? from_n - 15 : from_n;
  const int seed_hi = seed_lo + 15;
  // Steps run at levels whose +-8 neighbours lie in [lo, hi].
  require_levels(model, lo + 8, hi - 8);

  const std::size_t count = seeds.size();
  LaneTable table(lo, hi, count);
  std::vector<std::array<double, 4>> log_scale(count);
  std::vector<bool> undetermined(static_cast<std::size_t>(hi - lo + 1), false);
  for (std::size_t s = 0; s < count; ++s) {
    const WaveFunction& seed = seeds[s];
    if (!seed.contains(seed_lo) || !seed.contains(seed_hi)) {
      throw InvalidArgument("seed must supply levels [" + std::to_string(seed_lo) + ", " + std::to_string(seed_hi) + "]");
    }
    for (int r = 0; r < 4; ++r) log_scale[s][static_cast<std::size_t>(r)] = seed.log_scale(r);
    for (int n = seed_lo; n <= seed_hi; ++n) {
      table.row(n)[2 * s] = seed[n].real();
      table.row(n)[2 * s + 1] = seed[n].imag();
      if (!seed.determined(n)) undetermined[static_cast<std::size_t>(n - lo)] = true;
    }
  }

  std::vector<int> decoupled;
  auto renormalize = [&](int produced) {
    const auto row = table.row(produced);
    const int r = residue_of(produced);
    for (std::size_t s = 0; s < count; ++s) {
      const double m = std::max(std::abs(row[2 * s]), std::abs(row[2 * s + 1]));
      if (!(m > options.renormalize_above)) continue;
      const double shift = std::log(m);
      const double factor = 1.0 / m;
      for (int k = produced; k <= hi && k >= lo; k += back ? 4 : -4) {
        table.row(k)[2 * s] *= factor;
        table.row(k)[2 * s + 1] *= factor;
      }
      log_scale[s][static_cast<std::size_t>(r)] += shift;
    }
  };

  const int first = back ? from_n - 8 : from_n + 8;
  const int last = back ? to_n + 8 : to_n - 8;
  const int stride = back ? -1 : 1;
  for (int n = first; back ? n >= last : n <= last; n += stride) {
    const Coefficients co = model.at(n);
    const int produced = back ? n - 8 : n + 8;
    const double divisor = back ? co.g : co.c;
    if (divisor == 0.0) {
      if (!model.is_decoupled(n)) singular(back ? "g" : "c", n);
      decoupled.push_back(produced);
      std::ranges::fill(table.row(produced), 0.0);
      if (options.policy == DecouplingPolicy::skip) undetermined[static_cast<std::size_t>(produced - lo)] = true;
      continue;
    }
    const double rhs = model.gamma() * matter.h(n);
    if (back) {
      kernels::recurrence_step({rhs, co.c, co.d, co.e, co.f, co.g},
                               {table.row(n), table.row(n + 8), table.row(n + 4), table.row(n), table.row(n - 4)},
                               table.row(produced));
    } else {
      kernels::recurrence_step({rhs, co.d, co.e, co.f, co.g, co.c},
                               {table.row(n), table.row(n + 4), table.row(n), table.row(n - 4), table.row(n - 8)},
                               table.row(produced));
    }
    renormalize(produced);
  }

  std::vector<Evolution> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    WaveFunction psi(lo, hi);
    for (int n = lo; n <= hi; ++n) {
      if (undetermined[static_cast<std::size_t>(n - lo)]) {
        psi.mark_undetermined(n);
      } else {
        psi.set(n, {table.row(n)[2 * s], table.row(n)[2 * s + 1]});
      }
    }
    for (int r = 0; r < 4; ++r) psi.set_log_scale(r, log_scale[s][static_cast<std::size_t>(r)]);
    out.push_back({std::move(psi), decoupled, options.policy});
  }
  return out;
}

Evolution evolve(const WaveFunction& seed, const CoefficientModel& model, const MatterModel& matter, int from_n,
                 int to_n, Direction direction, const EvolveOptions& options) {
  auto result = evolve_batch(std::span(&seed, 1), model, matter, from_n, to_n, direction, options);
  return std::move(result.front());
}

int seed_block_rank(std::span<const WaveFunction> elements, int hi) {
  if (elements.empty()) return 0;
  Eigen::MatrixXcd block(16, static_cast<Eigen::Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto values = elements[k].common_scale();
    for (int i = 0; i < 16; ++i) {
      const int n = hi - 15 + i;
      if (!elements[k].contains(n)) throw InvalidArgument("basis element does not cover the seed block");
      block(i, static_cast<Eigen::Index>(k)) = values[static_cast<std::size_t>(n - elements[k].lo())];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  }
  return rank;
}

SolutionBasis make_basis(std::vector<WaveFunction> elements) {
  if (elements.empty()) throw InvalidArgument("empty solution basis");
  SolutionBasis basis;
  basis.lo = elements.front().lo();
  basis.hi = elements.front().hi();
  for (const auto& e : elements) {
    if (e.lo() != basis.lo || e.hi() != basis.hi) throw InvalidArgument("basis elements must share one support");
  }
  basis.dimension = seed_block_rank(elements, basis.hi);
  if (basis.dimension < static_cast<int>(elements.size())) {
    throw InvalidArgument("basis elements are linearly dependent: rank " + std::to_string(basis.dimension) + " of " +
                          std::to_string(elements.size()));
  }
  basis.elements = std::move(elements);
  return basis;
}

SolutionBasis solution_basis(const CoefficientModel& model, const MatterModel& matter, int lo, int hi,
                             std::span<const int> classes, const EvolveOptions& options) {
  std::array<bool, 4> wanted{};
  if (classes.empty()) {
    wanted.fill(true);
  } else {
    for (int r : classes) {
      if (r < 0 || r > 3) throw InvalidArgument("residue class must be 0..3");
      wanted[static_cast<std::size_t>(r)] = true;
    }
  }
  std::vector<WaveFunction> seeds;
  for (int n = hi - 15; n <= hi; ++n) {
    if (!wanted[static_cast<std::size_t>(residue_of(n))]) continue;
    WaveFunction seed(hi - 15, hi);
    seed.set(n, 1.0);
    seeds.push_back(std::move(seed));
  }
  auto evolved = evolve_batch(seeds, model, matter, hi, lo, Direction::backward, options);
  std::vector<WaveFunction> elements;
  elements.reserve(evolved.size());
  for (auto& e : evolved) elements.push_back(std::move(e.psi));

  SolutionBasis basis;
  basis.lo = lo;
  basis.hi = hi;
  basis.dimension = seed_block_rank(elements, hi);
  basis.elements = std::move(elements);
  return basis;
}

}  // namespace polymer::cosmo
