#include <immintrin.h>

#include "polymer/kernels/recurrence.hpp"

namespace polymer::kernels::avx2 {

void recurrence_step(const StepWeights& w, const StepRows& rows, std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d rhs = _mm256_set1_pd(w.rhs);
  const __m256d w1 = _mm256_set1_pd(w.w1);
  const __m256d w2 = _mm256_set1_pd(w.w2);
  const __m256d w3 = _mm256_set1_pd(w.w3);
  const __m256d w4 = _mm256_set1_pd(w.w4);
  const __m256d div = _mm256_set1_pd(w.divisor);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(rhs, _mm256_loadu_pd(rows.x0.data() + i));
    t = _mm256_sub_pd(t, _mm256_mul_pd(w1, _mm256_loadu_pd(rows.r1.data() + i)));
    t = _mm256_sub_pd(t, _mm256_mul_pd(w2, _mm256_loadu_pd(rows.r2.data() + i)));
    t = _mm256_sub_pd(t, _mm256_mul_pd(w3, _mm256_loadu_pd(rows.r3.data() + i)));
    t = _mm256_sub_pd(t, _mm256_mul_pd(w4, _mm256_loadu_pd(rows.r4.data() + i)));
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(t, div));
  }
  for (; i < n; ++i) {
    double t = w.rhs * rows.x0[i];
    t = t - w.w1 * rows.r1[i];
    t = t - w.w2 * rows.r2[i];
    t = t - w.w3 * rows.r3[i];
    t = t - w.w4 * rows.r4[i];
    out[i] = t / w.divisor;
  }
}

}  // namespace polymer::kernels::avx2
