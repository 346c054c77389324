#pragma once

#include <cstdint>
#include <span>

namespace polymer::kernels {

// Wrapping (mod 2^64) integer kernels for the machine-word tier of the
// state-counting DP. Callers guarantee, via a saturating bound pass, that
// no true value reaches 2^64, so the wrapped results are exact.

/// dst[i] += mult * src[i].  Requires mult < 2^32.
void axpy_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t mult);

/// dst[i] += plus[i] - minus[i].
void add_difference_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> plus,
                        std::span<const std::uint64_t> minus);

namespace scalar {
void axpy_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t mult);
void add_difference_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> plus,
                        std::span<const std::uint64_t> minus);
}  // namespace scalar
namespace avx2 {
void axpy_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t mult);
void add_difference_u64(std::span<std::uint64_t> dst, std::span<const std::uint64_t> plus,
                        std::span<const std::uint64_t> minus);
}  // namespace avx2

}  // namespace polymer::kernels
