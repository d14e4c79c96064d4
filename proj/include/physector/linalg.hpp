#pragma once

#include <Eigen/Dense>

namespace physector {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct SolveResult {
    Vector solution;
    double residual_inf = 0.0;  // max-norm of A*x - b
    double norm_sq = 0.0;       // squared Euclidean norm of the solution
};

/// Moore-Penrose pseudoinverse computed through the SVD. Singular values
/// <= tol are treated as zero; tol = 0 selects the scale-invariant default
/// max(rows, cols) * machine_epsilon * sigma_max.
Matrix pseudoinverse(const Matrix& m, double tol = 0.0);

/// Minimum-Euclidean-norm least-squares solution of A x = b. The reported
/// residual_inf lets callers detect an inconsistent system.
SolveResult min_norm_solve(const Matrix& a, const Vector& b, double tol = 0.0);

/// Numerical rank under the same truncation convention as pseudoinverse.
Eigen::Index numerical_rank(const Matrix& m, double tol = 0.0);

}  // namespace physector
