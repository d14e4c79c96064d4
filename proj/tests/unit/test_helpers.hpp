#pragma once

#include <random>

#include "physector/linalg.hpp"

namespace physector::testing {

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                            double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = dist(rng);
        }
    }
    return m;
}

inline Vector random_vector(Eigen::Index size, std::uint64_t seed, double lo = -1.0,
                            double hi = 1.0) {
    return random_matrix(size, 1, seed, lo, hi).col(0);
}

// Random point on the probability simplex.
inline Vector random_simplex(Eigen::Index size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> dist(1.0);
    Vector v(size);
    for (Eigen::Index i = 0; i < size; ++i) {
        v(i) = dist(rng);
    }
    return v / v.sum();
}

}  // namespace physector::testing
