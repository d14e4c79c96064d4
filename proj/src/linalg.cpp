#include "physector/linalg.hpp"

#include <Eigen/SVD>
#include <limits>

#include "physector/errors.hpp"

namespace physector {

namespace {

using Svd = Eigen::BDCSVD<Matrix>;

void check_matrix(const Matrix& m) {
    if (m.rows() < 1 || m.cols() < 1) {
        throw ShapeError("matrix must have at least one row and one column");
    }
    if (!m.allFinite()) {
        throw ValidationError("matrix contains non-finite entries");
    }
}

double effective_tol(const Svd& svd, double tol) {
    if (tol < 0.0) {
        throw ValidationError("tolerance must be nonnegative");
    }
    if (tol > 0.0) {
        return tol;
    }
    const double sigma_max = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    const double dim = static_cast<double>(std::max(svd.rows(), svd.cols()));
    return dim * std::numeric_limits<double>::epsilon() * sigma_max;
}

// sigma^+ applied componentwise.
Vector inverted_singulars(const Svd& svd, double tol) {
    Vector inv = svd.singularValues();
    for (Eigen::Index i = 0; i < inv.size(); ++i) {
        inv(i) = inv(i) > tol ? 1.0 / inv(i) : 0.0;
    }
    return inv;
}

}  // namespace

Matrix pseudoinverse(const Matrix& m, double tol) {
    check_matrix(m);
    Svd svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector inv = inverted_singulars(svd, effective_tol(svd, tol));
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

SolveResult min_norm_solve(const Matrix& a, const Vector& b, double tol) {
    check_matrix(a);
    if (b.size() != a.rows()) {
        throw ShapeError("right-hand side length " + std::to_string(b.size()) +
                         " does not match " + std::to_string(a.rows()) + " rows");
    }
    if (!b.allFinite()) {
        throw ValidationError("right-hand side contains non-finite entries");
    }
    Svd svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector inv = inverted_singulars(svd, effective_tol(svd, tol));

    SolveResult result;
    result.solution =
        svd.matrixV() * (inv.asDiagonal() * (svd.matrixU().transpose() * b));
    result.residual_inf = (a * result.solution - b).lpNorm<Eigen::Infinity>();
    result.norm_sq = result.solution.squaredNorm();
    return result;
}

Eigen::Index numerical_rank(const Matrix& m, double tol) {
    check_matrix(m);
    Svd svd(m);
    const double threshold = effective_tol(svd, tol);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        if (svd.singularValues()(i) > threshold) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace physector
