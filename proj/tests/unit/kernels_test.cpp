#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "polymer/cosmo/evolver.hpp"
#include "polymer/cosmo/lattice_family.hpp"
#include "polymer/horizon/counting.hpp"
#include "polymer/kernels/counting.hpp"
#include "polymer/kernels/dispatch.hpp"
#include "polymer/kernels/recurrence.hpp"
#include "polymer/kernels/reduce.hpp"

using namespace polymer;
using kernels::Isa;

namespace {

bool have_avx2() { return kernels::detected_isa() == Isa::avx2; }

std::vector<double> noise(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("isa override is scoped") {
  const Isa before = kernels::active_isa();
  {
    kernels::ScopedIsa s(Isa::scalar);
    CHECK(kernels::active_isa() == Isa::scalar);
  }
  CHECK(kernels::active_isa() == before);
  CHECK(kernels::isa_name(Isa::scalar) == "scalar");
}

#ifdef POLYMER_WITH_AVX2
TEST_CASE("recurrence step variants agree bit for bit") {
  if (!have_avx2()) return;
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u}) {
    auto x0 = noise(n, rng), r1 = noise(n, rng), r2 = noise(n, rng), r3 = noise(n, rng), r4 = noise(n, rng);
    const kernels::StepWeights w{0.3, -1.7, 2.25, 0.001, -4.5, 0.77};
    const kernels::StepRows rows{x0, r1, r2, r3, r4};
    std::vector<double> a(n), b(n);
    kernels::scalar::recurrence_step(w, rows, a);
    kernels::avx2::recurrence_step(w, rows, b);
    CHECK(a == b);
  }
}

TEST_CASE("difference energy variants agree bit for bit") {
  if (!have_avx2()) return;
  std::mt19937_64 rng(8);
  for (std::size_t n : {0u, 1u, 5u, 8u, 13u, 100u, 1001u}) {
    auto base = noise(n, rng), shifted = noise(n, rng);
    const auto a = kernels::scalar::difference_energy(base, shifted);
    const auto b = kernels::avx2::difference_energy(base, shifted);
    CHECK(a.difference == b.difference);
    CHECK(a.base == b.base);
  }
}

TEST_CASE("word counting kernels agree") {
  if (!have_avx2()) return;
  std::mt19937_64 rng(9);
  for (std::size_t n : {0u, 1u, 3u, 4u, 9u, 64u, 257u}) {
    std::vector<std::uint64_t> src(n), plus(n), minus(n), a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      src[i] = rng();
      plus[i] = rng();
      minus[i] = rng();
      a[i] = b[i] = rng();
    }
    kernels::scalar::axpy_u64(a, src, 0xfffffffbu);
    kernels::avx2::axpy_u64(b, src, 0xfffffffbu);
    CHECK(a == b);
    kernels::scalar::add_difference_u64(a, plus, minus);
    kernels::avx2::add_difference_u64(b, plus, minus);
    CHECK(a == b);
  }
}
#endif

TEST_CASE("evolution and counting give identical results under every isa") {
  using namespace cosmo;
  const auto model = build_lattice_model(example_family(), example_family().reference_gamma, -80, 80);
  auto run = [&] {
    return solution_basis(model, MatterModel::vacuum(), -80, 80);
  };
  auto count = [] {
    return horizon::count_states_dp({150.0, 1.5, 1.0, 0.0, {}}, horizon::CountingRule::r3(true)).count;
  };
  SolutionBasis scalar_basis = [&] {
    kernels::ScopedIsa s(Isa::scalar);
    return run();
  }();
  const auto scalar_count = [&] {
    kernels::ScopedIsa s(Isa::scalar);
    return count();
  }();
  kernels::ScopedIsa s(kernels::detected_isa());
  const SolutionBasis best = run();
  CHECK(count() == scalar_count);
  for (std::size_t e = 0; e < best.elements.size(); ++e) {
    const auto a = scalar_basis.elements[e].stored();
    const auto b = best.elements[e].stored();
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
}
