#include "polymer/kernels/counting.hpp"

#include <cassert>

#include "polymer/kernels/dispatch.hpp"

namespace polymer::kernels {

namespace scalar {

void axpy_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t mult) {
  assert(dst.size() == src.size());
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += mult * src[i];
}

void add_difference_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> plus,
                        std::span<const std::uint64_t> minus) {
  assert(dst.size() == plus.size() && dst.size() == minus.size());
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += plus[i] - minus[i];
}

}  // namespace scalar

void axpy_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t mult) {
#if defined(POLYMER_WITH_AVX2)
  if (active_isa() == Isa::avx2) {
    avx2::axpy_u64(dst, src, mult);
    return;
  }
#endif
  scalar::axpy_u64(dst, src, mult);
}

void add_difference_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> plus,
                        std::span<const std::uint64_t> minus) {
#if defined(POLYMER_WITH_AVX2)
  if (active_isa() == Isa::avx2) {
    avx2::add_difference_u64(dst, plus, minus);
    return;
  }
#endif
  scalar::add_difference_u64(dst, plus, minus);
}

}  // namespace polymer::kernels
