#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "physector/linalg.hpp"
#include "physector/states.hpp"

namespace physector {

// A set of J commuting measurement outcomes over D basis levels, described
// by the nonnegative weights c(j, l) = <l|Pi_j|l>. When `complete` is set,
// the outcomes resolve the identity on the modeled levels: every column of
// the coefficient matrix sums to 1.
struct CommutingMeasurement {
    Matrix coefficients;  // J x D
    bool complete = false;

    Eigen::Index n_outcomes() const { return coefficients.rows(); }
    Eigen::Index n_levels() const { return coefficients.cols(); }
};

// Born probabilities are plain vectors; invariants (nonnegativity, unit sum
// for complete measurements on normalized states) are enforced where they
// are consumed.
using ProbabilityVector = Vector;

constexpr double kCompletenessTol = 1e-12;

/// Returns the list of violated invariants, empty when the measurement is
/// well formed. Reported defects: negative coefficients, non-finite entries,
/// and per-level completeness defects when `complete` is set.
std::vector<std::string> validate(const CommutingMeasurement& m);

/// p_j = sum_l c(j, l) rho_ll.
ProbabilityVector born_probabilities(const CommutingMeasurement& m, const DiagonalState& state);

/// The projective measurement onto the basis levels themselves: c = I_D.
CommutingMeasurement identity_measurement(Eigen::Index n_levels);

/// A complete random measurement: coefficients drawn i.i.d. uniform on (0,1),
/// then each level's column normalized to sum 1. Deterministic given seed.
/// Requires n_outcomes >= 2 (a single normalized outcome carries no
/// information).
CommutingMeasurement random_measurement(Eigen::Index n_levels, Eigen::Index n_outcomes,
                                        std::uint64_t seed);

/// Row restriction to the given outcome indices. The result is marked
/// non-complete; coefficients are copied verbatim, never renormalized.
CommutingMeasurement subset(const CommutingMeasurement& m,
                            const std::vector<Eigen::Index>& outcome_indices);

}  // namespace physector
