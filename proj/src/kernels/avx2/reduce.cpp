#include <immintrin.h>

#include <array>

#include "polymer/kernels/reduce.hpp"

namespace polymer::kernels::avx2 {

DifferenceEnergy difference_energy(std::span<const double> base, std::span<const double> shifted) {
  const std::size_t n = base.size();
  __m256d diff = _mm256_setzero_pd();
  __m256d norm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d b = _mm256_loadu_pd(base.data() + i);
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(shifted.data() + i), b);
    diff = _mm256_add_pd(diff, _mm256_mul_pd(d, d));
    norm = _mm256_add_pd(norm, _mm256_mul_pd(b, b));
  }
  alignas(32) std::array<double, 4> dp{};
  alignas(32) std::array<double, 4> np{};
  _mm256_store_pd(dp.data(), diff);
  _mm256_store_pd(np.data(), norm);
  // tail elements continue the same interleaved partials
  for (; i < n; ++i) {
    const double d = shifted[i] - base[i];
    dp[i % 4] += d * d;
    np[i % 4] += base[i] * base[i];
  }
  return {(dp[0] + dp[1]) + (dp[2] + dp[3]), (np[0] + np[1]) + (np[2] + np[3])};
}

}  // namespace polymer::kernels::avx2
