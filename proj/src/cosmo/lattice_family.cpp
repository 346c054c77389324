#include "polymer/cosmo/lattice_family.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "polymer/errors.hpp"

namespace polymer::cosmo {

double lattice_node(int n, double kappa) {
  const double x = std::sqrt(kappa * std::abs(n));
  return n < 0 ? -x : x;
}

Coefficients lattice_coefficients(const LatticeFamily& family, double gamma, int n) {
  if (!(gamma > 0.0)) throw InvalidArgument("lattice family needs gamma > 0");
  const double kappa = family.kappa_per_gamma * gamma;
  const double eps = family.eps_factor * std::sqrt(kappa);
  auto x = [kappa](int m) { return lattice_node(m, kappa); };

  Coefficients co;
  const double x0 = x(n);

  // F'' from the nodes n-8, n, n+8
  const double h1 = x0 - x(n - 8);
  const double h2 = x(n + 8) - x0;
  co.g += 2.0 / (h1 * (h1 + h2));
  co.e += -2.0 / (h1 * h2);
  co.c += 2.0 / (h2 * (h1 + h2));

  // F'/x, regularized at the origin, from the nodes n-4, n, n+4
  const double k1 = x0 - x(n - 4);
  const double k2 = x(n + 4) - x0;
  const double p1 = x0 / (x0 * x0 + eps * eps);
  co.f += p1 * (-k2 / (k1 * (k1 + k2)));
  co.e += p1 * (k2 - k1) / (k1 * k2);
  co.d += p1 * k1 / (k2 * (k1 + k2));

  const int residue = ((n % 4) + 4) % 4;
  const double w = family.potential_width;
  co.e += -family.class_potential[residue] * (gamma / family.reference_gamma) / (x0 * x0 + w * w);
  co.e += family.core_strength * std::exp(-x0 * x0 / (eps * eps)) / (eps * eps);
  return co;
}

double lattice_curvature(int n, double kappa) {
  const int m = std::abs(n);
  auto root_a = [kappa](int k) { return std::sqrt(std::sqrt(kappa * k)); };
  const double diff = std::abs(root_a(m + 4) - root_a(std::abs(m - 4)));
  return std::cbrt(std::pow(diff / (2.0 * kappa), 2.0));
}

CoefficientModel build_lattice_model(const LatticeFamily& family, double gamma, int n_min, int n_max,
                                     std::string description) {
  if (n_min >= n_max) throw InvalidArgument("lattice model needs n_min < n_max");
  const double kappa = family.kappa_per_gamma * gamma;
  CoefficientModel::Tables t;
  for (int n = n_min; n <= n_max; ++n) {
    const Coefficients co = lattice_coefficients(family, gamma, n);
    t.c.push_back(co.c);
    t.d.push_back(co.d);
    t.e.push_back(co.e);
    t.f.push_back(co.f);
    t.g.push_back(co.g);
    t.a_eig.push_back(std::abs(lattice_node(n, kappa)));
    t.b_eig.push_back(lattice_curvature(n, kappa));
  }
  return CoefficientModel(gamma, n_min, n_max, std::move(t), {}, family, std::move(description));
}

double bounded_curvature_kappa() {
  const double ratio = 81.0 / 256.0;
  return ratio * ratio / std::cbrt(2.0);
}

LatticeFamily example_family() {
  LatticeFamily f;
  f.reference_gamma = std::numbers::ln2 / (std::numbers::sqrt3 * std::numbers::pi);
  f.kappa_per_gamma = bounded_curvature_kappa() / f.reference_gamma;
  return f;
}

}  // namespace polymer::cosmo
