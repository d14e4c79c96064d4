#pragma once

#include <utility>
#include <vector>

#include "physector/linalg.hpp"

namespace physector {

// Diagonal density-matrix entries rho_ll on a finite set of basis levels.
// Commuting outcomes are insensitive to off-diagonal elements, so this is
// the only state content the rest of the library ever needs.
struct DiagonalState {
    Vector diag;                   // rho_ll >= 0, sum <= 1
    double truncation_mass = 0.0;  // probability weight outside the modeled levels

    Eigen::Index n_levels() const { return diag.size(); }
};

/// Diagonal of the normalized even coherent-state superposition
/// |alpha> + |-alpha>, truncated to n_levels Fock levels. Odd levels are
/// exactly zero; the discarded tail is reported in truncation_mass.
DiagonalState even_cat_diagonal(double alpha, Eigen::Index n_levels);

/// Mixture of Fock states given as (level, weight) pairs. Weights must be
/// positive and sum to 1 within 1e-12. n_levels = 0 selects max level + 1.
DiagonalState fock_mixture(const std::vector<std::pair<Eigen::Index, double>>& components,
                           Eigen::Index n_levels = 0);

/// Squared amplitudes of the four-level pure state produced by three
/// half-wave plates at angles theta1, theta2, theta3 (radians):
///   (sin2t1 sin2t3)^2, (sin2t1 cos2t3)^2, (cos2t1 cos2t2)^2, (cos2t1 sin2t2)^2.
DiagonalState hybrid_pure_state(double theta1, double theta2, double theta3);

}  // namespace physector
