#include "polymer/spectrum/spin.hpp"

#include <cmath>
#include <string>

#include "polymer/errors.hpp"

namespace polymer {

SpinLabel::SpinLabel(int twice_j) : twice_j_(twice_j) {
  if (twice_j < 0) throw InvalidArgument("spin label 2j must be non-negative, got " + std::to_string(twice_j));
}

double area_contribution(SpinLabel spin) {
  const int k = spin.twice_j();
  if (k == 0) throw InvalidArgument("j = 0 edges carry no area");
  const double kd = k;
  return std::sqrt(kd * (kd + 2.0)) / 2.0;
}

void require_positive_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("Barbero-Immirzi parameter must be positive, got " + std::to_string(gamma));
  }
}

double puncture_area(SpinLabel spin, double gamma) {
  require_positive_gamma(gamma);
  return kAreaPrefactor * gamma * area_contribution(spin);
}

AreaValue area_eigenvalue(std::span<const SpinLabel> spins, double gamma) {
  require_positive_gamma(gamma);
  double sum = 0.0;
  for (SpinLabel s : spins) sum += area_contribution(s);
  return {kAreaPrefactor * gamma * sum, gamma};
}

AreaValue min_nonzero_area(double gamma) {
  return {puncture_area(SpinLabel::half(), gamma), gamma};
}

}  // namespace polymer
