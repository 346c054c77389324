#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace polymer::cosmo {

using Amplitude = std::complex<double>;

inline constexpr int residue_of(int n) noexcept { return ((n % 4) + 4) % 4; }

/// Amplitudes psi_n on a contiguous range of levels [lo, hi].
///
/// The four residue classes n mod 4 never mix under the recurrence, so each
/// carries its own scale: the physical amplitude is stored(n) * exp(log_scale(n mod 4)).
/// Levels the evolution could not fix (decoupled, skip policy) are flagged
/// undetermined and hold 0.
class WaveFunction {
 public:
  WaveFunction(int lo, int hi);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  bool contains(int n) const noexcept { return n >= lo_ && n <= hi_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  /// Stored (unscaled) amplitude. Throws InvalidArgument outside the range.
  Amplitude operator[](int n) const;
  void set(int n, Amplitude value);

  std::span<const Amplitude> stored() const noexcept { return amplitudes_; }
  std::span<Amplitude> stored() noexcept { return amplitudes_; }

  double log_scale(int residue) const { return log_scale_.at(static_cast<std::size_t>(residue)); }
  void set_log_scale(int residue, double value) { log_scale_.at(static_cast<std::size_t>(residue)) = value; }

  bool determined(int n) const;
  void mark_undetermined(int n);

  /// Amplitudes with every class brought to a common scale (the largest
  /// log-scale present). Classes far below it underflow to zero, which leaves
  /// the ray unchanged.
  std::vector<Amplitude> common_scale(double* log_scale_out = nullptr) const;

  /// Multiplies the stored amplitudes of one class by exp(-shift) and adds
  /// `shift` to its log-scale.
  void rescale_class(int residue, double shift);

 private:
  std::size_t index(int n) const;

  int lo_;
  int hi_;
  std::vector<Amplitude> amplitudes_;
  std::vector<bool> undetermined_;
  std::array<double, 4> log_scale_{};
};

/// Distance between the rays of u and v on the levels [lo, hi]: both are
/// normalized, v is phase-aligned to u, and the norm of the difference is
/// returned (0 for identical rays, up to 2).
double ray_distance(const WaveFunction& u, const WaveFunction& v, int lo, int hi);

}  // namespace polymer::cosmo
