#include "physector/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "physector/errors.hpp"

namespace physector {

DiagonalState even_cat_diagonal(double alpha, Eigen::Index n_levels) {
    if (n_levels < 1) {
        throw ShapeError("state needs at least one level");
    }
    const double a2 = alpha * alpha;
    // |<n|alpha> + <n|-alpha>|^2 is proportional to alpha^(2n)/n! on even n
    // and cancels exactly on odd n; the normalization over all n is cosh(a2).
    DiagonalState state;
    state.diag = Vector::Zero(n_levels);
    double kept = 0.0;
    double term = 1.0 / std::cosh(a2);  // n = 0
    for (Eigen::Index n = 0; n < n_levels; n += 2) {
        state.diag(n) = term;
        kept += term;
        term *= a2 * a2 / (static_cast<double>(n + 1) * static_cast<double>(n + 2));
    }
    state.truncation_mass = std::max(0.0, 1.0 - kept);
    return state;
}

DiagonalState fock_mixture(const std::vector<std::pair<Eigen::Index, double>>& components,
                           Eigen::Index n_levels) {
    if (components.empty()) {
        throw ValidationError("mixture needs at least one component");
    }
    Eigen::Index max_level = 0;
    double weight_sum = 0.0;
    std::set<Eigen::Index> seen;
    for (const auto& [level, weight] : components) {
        if (level < 0) {
            throw ValidationError("negative level " + std::to_string(level));
        }
        if (!seen.insert(level).second) {
            throw ValidationError("duplicate level " + std::to_string(level));
        }
        if (!(weight > 0.0)) {
            throw ValidationError("component weights must be positive");
        }
        max_level = std::max(max_level, level);
        weight_sum += weight;
    }
    if (std::abs(weight_sum - 1.0) > 1e-12) {
        throw ValidationError("component weights sum to " + std::to_string(weight_sum) +
                              ", expected 1");
    }
    if (n_levels == 0) {
        n_levels = max_level + 1;
    } else if (n_levels <= max_level) {
        throw ValidationError("n_levels " + std::to_string(n_levels) +
                              " does not cover level " + std::to_string(max_level));
    }

    DiagonalState state;
    state.diag = Vector::Zero(n_levels);
    for (const auto& [level, weight] : components) {
        state.diag(level) = weight;
    }
    state.truncation_mass = std::max(0.0, 1.0 - state.diag.sum());
    return state;
}

DiagonalState hybrid_pure_state(double theta1, double theta2, double theta3) {
    const double s1 = std::sin(2.0 * theta1), c1 = std::cos(2.0 * theta1);
    const double s2 = std::sin(2.0 * theta2), c2 = std::cos(2.0 * theta2);
    const double s3 = std::sin(2.0 * theta3), c3 = std::cos(2.0 * theta3);

    DiagonalState state;
    state.diag = Vector(4);
    state.diag << (s1 * s3) * (s1 * s3), (s1 * c3) * (s1 * c3),
                  (c1 * c2) * (c1 * c2), (c1 * s2) * (c1 * s2);
    state.truncation_mass = std::max(0.0, 1.0 - state.diag.sum());
    return state;
}

}  // namespace physector
