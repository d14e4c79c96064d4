#include "physector/measurement.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "physector/errors.hpp"
#include "physector/rng.hpp"

namespace physector {

std::vector<std::string> validate(const CommutingMeasurement& m) {
    std::vector<std::string> diagnostics;
    if (m.coefficients.rows() < 1 || m.coefficients.cols() < 1) {
        diagnostics.push_back("empty coefficient matrix");
        return diagnostics;
    }
    for (Eigen::Index j = 0; j < m.n_outcomes(); ++j) {
        for (Eigen::Index l = 0; l < m.n_levels(); ++l) {
            const double c = m.coefficients(j, l);
            if (!std::isfinite(c)) {
                std::ostringstream msg;
                msg << "non-finite coefficient at (" << j << "," << l << ")";
                diagnostics.push_back(msg.str());
            } else if (c < 0.0) {
                std::ostringstream msg;
                msg << "negative coefficient " << c << " at (" << j << "," << l << ")";
                diagnostics.push_back(msg.str());
            }
        }
    }
    if (m.complete) {
        for (Eigen::Index l = 0; l < m.n_levels(); ++l) {
            const double defect = 1.0 - m.coefficients.col(l).sum();
            if (std::abs(defect) > kCompletenessTol) {
                std::ostringstream msg;
                msg << "completeness defect " << defect << " at level " << l;
                diagnostics.push_back(msg.str());
            }
        }
    }
    return diagnostics;
}

ProbabilityVector born_probabilities(const CommutingMeasurement& m, const DiagonalState& state) {
    if (state.n_levels() != m.n_levels()) {
        throw ShapeError("state has " + std::to_string(state.n_levels()) +
                         " levels, measurement expects " + std::to_string(m.n_levels()));
    }
    return m.coefficients * state.diag;
}

CommutingMeasurement identity_measurement(Eigen::Index n_levels) {
    if (n_levels < 1) {
        throw ShapeError("measurement needs at least one level");
    }
    return CommutingMeasurement{Matrix::Identity(n_levels, n_levels), true};
}

CommutingMeasurement random_measurement(Eigen::Index n_levels, Eigen::Index n_outcomes,
                                        std::uint64_t seed) {
    if (n_levels < 1) {
        throw ShapeError("measurement needs at least one level");
    }
    if (n_outcomes < 2) {
        throw ValidationError(
            "a complete random measurement needs at least two outcomes; "
            "a single column-normalized outcome would be constant");
    }
    std::mt19937_64 rng(seed);
    Matrix c(n_outcomes, n_levels);
    // Row-major fill so the draw order matches the serialized layout.
    for (Eigen::Index j = 0; j < n_outcomes; ++j) {
        for (Eigen::Index l = 0; l < n_levels; ++l) {
            c(j, l) = uniform_open01(rng);
        }
    }
    for (Eigen::Index l = 0; l < n_levels; ++l) {
        c.col(l) /= c.col(l).sum();
    }
    return CommutingMeasurement{std::move(c), true};
}

CommutingMeasurement subset(const CommutingMeasurement& m,
                            const std::vector<Eigen::Index>& outcome_indices) {
    if (outcome_indices.empty()) {
        throw ValidationError("outcome subset must not be empty");
    }
    std::set<Eigen::Index> seen;
    Matrix c(static_cast<Eigen::Index>(outcome_indices.size()), m.n_levels());
    for (std::size_t i = 0; i < outcome_indices.size(); ++i) {
        const Eigen::Index j = outcome_indices[i];
        if (j < 0 || j >= m.n_outcomes()) {
            throw ValidationError("outcome index " + std::to_string(j) + " out of range");
        }
        if (!seen.insert(j).second) {
            throw ValidationError("duplicate outcome index " + std::to_string(j));
        }
        c.row(static_cast<Eigen::Index>(i)) = m.coefficients.row(j);
    }
    return CommutingMeasurement{std::move(c), false};
}

}  // namespace physector
