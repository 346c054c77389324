#pragma once

#include <string>

#include "polymer/cosmo/model.hpp"

namespace polymer::cosmo {

/// Signed node position sqrt(kappa |n|), negative for n < 0.
double lattice_node(int n, double kappa);

/// Recurrence coefficients of the family at level n for a given gamma.
Coefficients lattice_coefficients(const LatticeFamily& family, double gamma, int n);

/// Curvature eigenvalue
///   b_n = [ |sqrt(a_{|n|+4}) - sqrt(a_{||n|-4|})| / (2 kappa) ]^(2/3),
/// symmetric in n, with b_0 = 0.
double lattice_curvature(int n, double kappa);

/// Tabulates the family on [n_min, n_max]; a_eig = |x_n|.
CoefficientModel build_lattice_model(const LatticeFamily& family, double gamma, int n_min, int n_max,
                                     std::string description = {});

/// The shipped illustrative family: gamma = ln2/(sqrt(3) pi), kappa fixed so
/// that sup b equals 256/81.
LatticeFamily example_family();

/// kappa at which sup_n b_n = 256/81 (the supremum sits at n = +-4).
double bounded_curvature_kappa();

}  // namespace polymer::cosmo
