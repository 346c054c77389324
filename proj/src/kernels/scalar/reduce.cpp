#include "polymer/kernels/reduce.hpp"

#include <array>
#include <cassert>

#include "polymer/kernels/dispatch.hpp"

namespace polymer::kernels {

namespace scalar {

DifferenceEnergy difference_energy(std::span<const double> base, std::span<const double> shifted) {
  assert(base.size() == shifted.size());
  std::array<double, 4> diff{};
  std::array<double, 4> norm{};
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double d = shifted[i] - base[i];
    diff[i % 4] += d * d;
    norm[i % 4] += base[i] * base[i];
  }
  return {(diff[0] + diff[1]) + (diff[2] + diff[3]), (norm[0] + norm[1]) + (norm[2] + norm[3])};
}

}  // namespace scalar

DifferenceEnergy difference_energy(std::span<const double> base, std::span<const double> shifted) {
#if defined(POLYMER_WITH_AVX2)
  if (active_isa() == Isa::avx2) return avx2::difference_energy(base, shifted);
#endif
  return scalar::difference_energy(base, shifted);
}

}  // namespace polymer::kernels
