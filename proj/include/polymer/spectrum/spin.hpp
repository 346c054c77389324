#pragma once

#include <compare>
#include <numbers>
#include <span>

namespace polymer {

/// Half-integer spin j, stored exactly as the integer 2j.
class SpinLabel {
 public:
  constexpr SpinLabel() = default;
  /// Throws InvalidArgument for negative values.
  explicit SpinLabel(int twice_j);

  static SpinLabel half() { return SpinLabel(1); }

  constexpr int twice_j() const noexcept { return twice_j_; }
  constexpr double j() const noexcept { return 0.5 * twice_j_; }
  /// Number of magnetic sublevels, 2j + 1.
  constexpr int multiplicity() const noexcept { return twice_j_ + 1; }

  friend constexpr auto operator<=>(SpinLabel, SpinLabel) = default;

 private:
  int twice_j_ = 1;
};

/// An area in Planck units together with the Barbero-Immirzi parameter it
/// was computed at. Areas are never stored without their gamma.
struct AreaValue {
  double value = 0.0;
  double gamma = 1.0;
};

/// 8*pi, the prefactor of the area eigenvalue sum (in units of gamma * l_Pl^2).
inline constexpr double kAreaPrefactor = 8.0 * std::numbers::pi;

/// sqrt(j(j+1)) evaluated as sqrt(k(k+2))/2 with k = 2j. Rejects j = 0,
/// which carries no flux through the surface.
double area_contribution(SpinLabel spin);

/// Area quantum of one edge (one horizon puncture): 8*pi*gamma*sqrt(j(j+1)).
double puncture_area(SpinLabel spin, double gamma);

/// 8*pi*gamma * sum_I sqrt(j_I(j_I+1)). Empty input gives 0.
AreaValue area_eigenvalue(std::span<const SpinLabel> spins, double gamma);

/// Smallest nonzero area eigenvalue: a single j = 1/2 edge, 4*sqrt(3)*pi*gamma.
AreaValue min_nonzero_area(double gamma);

/// Throws InvalidArgument unless gamma is finite and positive.
void require_positive_gamma(double gamma);

}  // namespace polymer
