#include <doctest.h>

#include <Eigen/LU>
#include <cmath>

#include "physector/errors.hpp"
#include "physector/linalg.hpp"
#include "test_helpers.hpp"

using namespace physector;
using testing::random_matrix;
using testing::random_vector;

namespace {

double inf_norm(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

void check_penrose(const Matrix& m, const Matrix& p, double rel_tol) {
    const double scale_m = std::max(1e-30, inf_norm(m));
    const double scale_p = std::max(1e-30, inf_norm(p));
    CHECK(inf_norm(m * p * m - m) <= rel_tol * scale_m);
    CHECK(inf_norm(p * m * p - p) <= rel_tol * scale_p);
    const Matrix mp = m * p;
    const Matrix pm = p * m;
    CHECK(inf_norm(mp - mp.transpose()) <= rel_tol * std::max(1.0, inf_norm(mp)));
    CHECK(inf_norm(pm - pm.transpose()) <= rel_tol * std::max(1.0, inf_norm(pm)));
}

}  // namespace

TEST_CASE("pseudoinverse of the identity is the identity") {
    const Matrix p = pseudoinverse(Matrix::Identity(3, 3));
    CHECK(inf_norm(p - Matrix::Identity(3, 3)) <= 1e-12);
}

TEST_CASE("pseudoinverse inverts nonzero singular values and drops zero ones") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 2.0;
    const Matrix p = pseudoinverse(m);
    CHECK(p(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p(0, 1) == 0.0);
    CHECK(p(1, 0) == 0.0);
    CHECK(p(1, 1) == 0.0);
}

TEST_CASE("pseudoinverse of a random 3x5 matrix satisfies the Penrose conditions") {
    const Matrix m = random_matrix(3, 5, 42);
    check_penrose(m, pseudoinverse(m), 1e-10);
}

TEST_CASE("Penrose conditions hold over random shapes up to 64x64") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const auto rows = static_cast<Eigen::Index>(1 + rng() % 64);
        const auto cols = static_cast<Eigen::Index>(1 + rng() % 64);
        Matrix m = random_matrix(rows, cols, rng());
        if (trial % 3 == 0 && rows > 1) {
            m.row(rows - 1) = m.row(0);  // force rank deficiency
        }
        check_penrose(m, pseudoinverse(m), 1e-9);
    }
}

TEST_CASE("pseudoinverse rejects non-finite input") {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = std::nan("");
    CHECK_THROWS_AS(pseudoinverse(m), ValidationError);
    CHECK_THROWS_AS(pseudoinverse(Matrix()), ShapeError);
    CHECK_THROWS_AS(pseudoinverse(Matrix::Identity(2, 2), -1.0), ValidationError);
}

TEST_CASE("min_norm_solve on the identity returns the right-hand side") {
    Vector b(2);
    b << 3.0, 4.0;
    const SolveResult r = min_norm_solve(Matrix::Identity(2, 2), b);
    CHECK(r.solution(0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(r.solution(1) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(r.residual_inf <= 1e-12);
    CHECK(r.norm_sq == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("min_norm_solve splits an underdetermined row evenly") {
    Matrix a(1, 2);
    a << 1.0, 1.0;
    Vector b(1);
    b << 1.0;
    const SolveResult r = min_norm_solve(a, b);
    CHECK(r.solution(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.solution(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("min_norm_solve reports the least-squares residual of an inconsistent system") {
    // A x spans {(t, t)}; brute force over that one-parameter family puts the
    // optimum at t = 0.5 with max-norm residual 0.5 against b = (0, 1).
    Matrix a(2, 2);
    a << 1.0, 0.0, 1.0, 0.0;
    Vector b(2);
    b << 0.0, 1.0;

    double best = 1e300;
    for (int i = -400; i <= 400; ++i) {
        const double t = 0.005 * i;
        const double sq = t * t + (t - 1.0) * (t - 1.0);
        best = std::min(best, sq);
    }
    const SolveResult r = min_norm_solve(a, b);
    const double achieved = (a * r.solution - b).squaredNorm();
    CHECK(achieved <= best + 1e-12);
    CHECK(r.residual_inf == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.solution(1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("min_norm_solve rejects mismatched shapes") {
    CHECK_THROWS_AS(min_norm_solve(Matrix::Identity(2, 2), Vector::Ones(3)), ShapeError);
}

TEST_CASE("consistent systems solve to residual below 1e-9 of the data scale") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rows = static_cast<Eigen::Index>(1 + rng() % 20);
        const auto cols = static_cast<Eigen::Index>(1 + rng() % 20);
        const Matrix a = random_matrix(rows, cols, rng());
        const Vector b = a * random_vector(cols, rng());
        const SolveResult r = min_norm_solve(a, b);
        const double scale = std::max(1e-30, b.cwiseAbs().maxCoeff());
        CHECK(r.residual_inf <= 1e-9 * scale);
    }
}

TEST_CASE("no grid-sampled exact solution beats the minimum-norm one") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Matrix a = random_matrix(2, 4, seed);
        const Vector b = a * random_vector(4, seed + 100);
        const SolveResult r = min_norm_solve(a, b);

        const Eigen::FullPivLU<Matrix> lu(a);
        const Matrix kernel = lu.kernel();
        REQUIRE(kernel.cols() == 2);
        for (int i = -10; i <= 10; ++i) {
            for (int j = -10; j <= 10; ++j) {
                const Vector candidate =
                    r.solution + kernel.col(0) * (0.3 * i) + kernel.col(1) * (0.3 * j);
                CHECK((a * candidate - b).cwiseAbs().maxCoeff() <= 1e-8);
                CHECK(candidate.squaredNorm() >= r.norm_sq - 1e-9);
            }
        }
    }
}

TEST_CASE("numerical_rank counts significant singular values") {
    CHECK(numerical_rank(Matrix::Identity(4, 4)) == 4);
    Matrix m(2, 3);
    m << 1.0, 2.0, 3.0, 2.0, 4.0, 6.0;
    CHECK(numerical_rank(m) == 1);
}
