#include "polymer/kernels/recurrence.hpp"

#include <cassert>

#include "polymer/kernels/dispatch.hpp"

namespace polymer::kernels {

namespace scalar {

void recurrence_step(const StepWeights& w, const StepRows& rows, std::span<double> out) {
  const std::size_t n = out.size();
  assert(rows.x0.size() == n && rows.r1.size() == n && rows.r2.size() == n &&
         rows.r3.size() == n && rows.r4.size() == n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = w.rhs * rows.x0[i];
    t = t - w.w1 * rows.r1[i];
    t = t - w.w2 * rows.r2[i];
    t = t - w.w3 * rows.r3[i];
    t = t - w.w4 * rows.r4[i];
    out[i] = t / w.divisor;
  }
}

}  // namespace scalar

void recurrence_step(const StepWeights& w, const StepRows& rows, std::span<double> out) {
#if defined(POLYMER_WITH_AVX2)
  if (active_isa() == Isa::avx2) {
    avx2::recurrence_step(w, rows, out);
    return;
  }
#endif
  scalar::recurrence_step(w, rows, out);
}

}  // namespace polymer::kernels
