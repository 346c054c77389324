#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polymer/cosmo/model.hpp"
#include "polymer/cosmo/wavefunction.hpp"

namespace polymer::cosmo {

/// Diagonal action h(n) of the matter Hamiltonian on the reduced matter sector.
struct MatterModel {
  std::function<double(int)> h;

  static MatterModel vacuum() {
    return {[](int) { return 0.0; }};
  }
};

enum class Direction { backward, forward };

/// What to do with the amplitude a declared decoupling level leaves unfixed.
enum class DecouplingPolicy { skip, zero };

struct EvolveOptions {
  DecouplingPolicy policy = DecouplingPolicy::skip;
  double renormalize_above = 1e100;
};

struct Evolution {
  WaveFunction psi;
  std::vector<int> decoupled_levels;  ///< levels whose amplitude the policy supplied
  DecouplingPolicy policy = DecouplingPolicy::skip;
};

/// psi_{n-8} from psi at n+8, n+4, n, n-4. Throws DecoupledLevel when g_n = 0
/// at a declared level and SingularModel when g_n = 0 elsewhere.
Amplitude step_backward(const WaveFunction& psi, const CoefficientModel& model, const MatterModel& matter, int n);

/// psi_{n+8} from psi at n+4, n, n-4, n-8; the divisor is c_n.
Amplitude step_forward(const WaveFunction& psi, const CoefficientModel& model, const MatterModel& matter, int n);

/// Evolves from the 16 seed levels next to `from_n` to `to_n`.
/// Backward: seed on [from_n - 15, from_n], result on [to_n, from_n].
/// Forward: seed on [from_n, from_n + 15], result on [from_n, to_n].
Evolution evolve(const WaveFunction& seed, const CoefficientModel& model, const MatterModel& matter, int from_n,
                 int to_n, Direction direction, const EvolveOptions& options = {});

/// Same as evolve for several seeds at once; every seed is evolved with the
/// identical arithmetic it would see alone.
std::vector<Evolution> evolve_batch(std::span<const WaveFunction> seeds, const CoefficientModel& model,
                                    const MatterModel& matter, int from_n, int to_n, Direction direction,
                                    const EvolveOptions& options = {});

struct SolutionBasis {
  std::vector<WaveFunction> elements;
  int lo = 0;
  int hi = 0;
  int dimension = 0;  ///< rank of the seed block
};

/// Unit seeds on the 16 top levels of [lo, hi] (restricted to `classes`),
/// evolved backward to lo.
SolutionBasis solution_basis(const CoefficientModel& model, const MatterModel& matter, int lo, int hi,
                             std::span<const int> classes = {}, const EvolveOptions& options = {});

/// Wraps given solutions as a basis. The seed block (the 16 top levels) must
/// have full column rank; dependent elements are rejected.
SolutionBasis make_basis(std::vector<WaveFunction> elements);

/// Numerical rank of the seed block, relative tolerance 1e-10.
int seed_block_rank(std::span<const WaveFunction> elements, int hi);

}  // namespace polymer::cosmo
