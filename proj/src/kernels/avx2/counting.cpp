#include <immintrin.h>

#include "polymer/kernels/counting.hpp"

namespace polymer::kernels::avx2 {

namespace {

// 64x32 -> low 64 bits of the product, from two 32x32 partial products.
inline __m256i mul_u64_by_u32(__m256i a, __m256i m) {
  const __m256i lo = _mm256_mul_epu32(a, m);
  const __m256i hi = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), m);
  return _mm256_add_epi64(lo, _mm256_slli_epi64(hi, 32));
}

}  // namespace

void axpy_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t mult) {
  const std::size_t n = dst.size();
  const __m256i m = _mm256_set1_epi64x(static_cast<long long>(mult));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    const auto* s = reinterpret_cast<const __m256i*>(src.data() + i);
    const __m256i prod = mul_u64_by_u32(_mm256_loadu_si256(s), m);
    _mm256_storeu_si256(d, _mm256_add_epi64(_mm256_loadu_si256(d), prod));
  }
  for (; i < n; ++i) dst[i] += mult * src[i];
}

void add_difference_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> plus,
                        std::span<const std::uint64_t> minus) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    auto* d = reinterpret_cast<__m256i*>(dst.data() + i);
    const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(plus.data() + i));
    const __m256i q = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(minus.data() + i));
    _mm256_storeu_si256(d, _mm256_add_epi64(_mm256_loadu_si256(d), _mm256_sub_epi64(p, q)));
  }
  for (; i < n; ++i) dst[i] += plus[i] - minus[i];
}

}  // namespace polymer::kernels::avx2
