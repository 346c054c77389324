#pragma once

#include <cstddef>
#include <span>

namespace polymer::kernels {

/// Weights of one five-term recurrence solve, applied lane-wise:
///
///   out[i] = (rhs*x0[i] - w1*r1[i] - w2*r2[i] - w3*r3[i] - w4*r4[i]) / divisor
///
/// Backward steps pass (c, d, e, f) as w1..w4 with divisor g; forward steps
/// pass (d, e, f, g) with divisor c. The operation order is fixed so every
/// variant rounds identically.
struct StepWeights {
  double rhs = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;
  double w4 = 0.0;
  double divisor = 1.0;
};

struct StepRows {
  std::span<const double> x0;
  std::span<const double> r1;
  std::span<const double> r2;
  std::span<const double> r3;
  std::span<const double> r4;
};

/// Dispatching entry point. All rows and `out` must have the same length.
void recurrence_step(const StepWeights& w, const StepRows& rows, std::span<double> out);

namespace scalar {
void recurrence_step(const StepWeights& w, const StepRows& rows, std::span<double> out);
}
namespace avx2 {
void recurrence_step(const StepWeights& w, const StepRows& rows, std::span<double> out);
}

}  // namespace polymer::kernels
