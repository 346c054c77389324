#pragma once

#include <span>

namespace polymer::kernels {

struct DifferenceEnergy {
  double difference = 0.0;  ///< sum of (shifted[i] - base[i])^2
  double base = 0.0;        ///< sum of base[i]^2
};

/// Both sums are accumulated in four interleaved partials (element i feeds
/// partial i % 4) and combined as (p0 + p1) + (p2 + p3), in every variant.
DifferenceEnergy difference_energy(std::span<const double> base, std::span<const double> shifted);

namespace scalar {
DifferenceEnergy difference_energy(std::span<const double> base, std::span<const double> shifted);
}
namespace avx2 {
DifferenceEnergy difference_energy(std::span<const double> base, std::span<const double> shifted);
}

}  // namespace polymer::kernels
