#include "isslab/rng.hpp"
#include "isslab/spectral.hpp"

#include "doctest.h"

#include <cmath>

using namespace isslab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("make_operator sorts and exposes the growth bound") {
    SpectralOperator op = make_operator({-8.0, -2.0, -4.0});
    CHECK(op.growth_bound() == doctest::Approx(-2.0));
    CHECK(op.eigenvalues(0) == -2.0);
    CHECK(op.eigenvalues(2) == -8.0);

    SpectralOperator zero = make_operator({0.0});
    CHECK(zero.growth_bound() == 0.0);
    StateVector x{Eigen::VectorXd::Ones(1), 0.0};
    CHECK_THROWS(fractional_apply(zero, 0.5, x));

    CHECK_THROWS(make_operator({}));
    CHECK_THROWS(make_operator({-1.0, std::nan("")}));
}

TEST_CASE("neumann_laplacian_1d eigenvalues and validation") {
    CHECK(neumann_laplacian_1d(1.0, 1).eigenvalues(0) == doctest::Approx(-1.0));
    SpectralOperator op = neumann_laplacian_1d(1.0, 3);
    CHECK(op.eigenvalues(1) == doctest::Approx(-1.0 - kPi * kPi));
    CHECK(op.eigenvalues(2) == doctest::Approx(-1.0 - 4.0 * kPi * kPi));
    CHECK(op.growth_bound() == doctest::Approx(-1.0));
    CHECK(op.basis == Basis::NeumannCos);
    CHECK_THROWS(neumann_laplacian_1d(0.0, 3));
    CHECK_THROWS(neumann_laplacian_1d(1.0, 0));
}

TEST_CASE("dirichlet_laplacian_1d eigenvalues") {
    CHECK(dirichlet_laplacian_1d(1).eigenvalues(0) == doctest::Approx(-kPi * kPi));
    SpectralOperator op = dirichlet_laplacian_1d(2);
    CHECK(op.eigenvalues(1) == doctest::Approx(-4.0 * kPi * kPi));
    CHECK(op.growth_bound() == doctest::Approx(-kPi * kPi));
    CHECK(op.basis == Basis::DirichletSin);
}

TEST_CASE("semigroup_apply acts diagonally") {
    SpectralOperator op = make_operator({-1.0});
    StateVector x{Eigen::VectorXd::Ones(1), 0.0};
    CHECK(semigroup_apply(op, std::log(2.0), x).coeffs(0) == doctest::Approx(0.5));
    CHECK(semigroup_apply(op, 0.0, x).coeffs(0) == 1.0);

    SpectralOperator op2 = make_operator({-1.0, -2.0});
    StateVector y{Eigen::VectorXd::Ones(2), 0.0};
    StateVector ty = semigroup_apply(op2, 1.0, y);
    CHECK(ty.coeffs(0) == doctest::Approx(std::exp(-1.0)));
    CHECK(ty.coeffs(1) == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS(semigroup_apply(op, -1.0, x));
}

TEST_CASE("fractional powers: values, inverses, commutation, additivity") {
    SpectralOperator op = make_operator({-4.0});
    StateVector x{Eigen::VectorXd::Ones(1), 0.0};
    CHECK(fractional_apply(op, 0.5, x).coeffs(0) == doctest::Approx(2.0));
    CHECK(fractional_apply(op, 0.0, x).coeffs(0) == 1.0);
    CHECK(fractional_apply(op, 0.5, x).space_index == doctest::Approx(-0.5));

    SplitMix64 rng(5);
    std::vector<double> lam(8);
    for (auto& l : lam) l = -rng.uniform(0.5, 30.0);
    std::sort(lam.begin(), lam.end(), std::greater<>());
    SpectralOperator rnd = make_operator(lam);
    StateVector v{Eigen::VectorXd(8), 0.0};
    for (int i = 0; i < 8; ++i) v.coeffs(i) = rng.uniform(-1.0, 1.0);

    StateVector round = fractional_apply(rnd, -0.7, fractional_apply(rnd, 0.7, v));
    CHECK((round.coeffs - v.coeffs).norm() <= 1e-12 * v.coeffs.norm());

    StateVector lhs = fractional_apply(rnd, 0.3, semigroup_apply(rnd, 0.9, v));
    StateVector rhs = semigroup_apply(rnd, 0.9, fractional_apply(rnd, 0.3, v));
    CHECK((lhs.coeffs - rhs.coeffs).norm() <= 1e-12 * lhs.coeffs.norm());

    StateVector two = fractional_apply(rnd, 0.25, fractional_apply(rnd, 0.35, v));
    StateVector one = fractional_apply(rnd, 0.6, v);
    CHECK((two.coeffs - one.coeffs).norm() <= 1e-12 * one.coeffs.norm());

    CHECK_THROWS(fractional_apply(rnd, 1.5, v));
}

TEST_CASE("space_norm: Pythagoras, weights, monotonicity in alpha") {
    SpectralOperator unit = make_operator({-1.0, -1.0});
    StateVector x{Eigen::VectorXd(2), 0.0};
    x.coeffs << 3.0, 4.0;
    CHECK(space_norm(unit, 0.37, x) == doctest::Approx(5.0));

    SpectralOperator four = make_operator({-4.0});
    StateVector e{Eigen::VectorXd::Ones(1), 0.0};
    CHECK(space_norm(four, 0.5, e) == doctest::Approx(2.0));

    SplitMix64 rng(6);
    std::vector<double> lam(10);
    for (auto& l : lam) l = -rng.uniform(1.0, 100.0);  // all -lambda >= 1
    std::sort(lam.begin(), lam.end(), std::greater<>());
    SpectralOperator op = make_operator(lam);
    for (int c = 0; c < 50; ++c) {
        StateVector v{Eigen::VectorXd(10), 0.0};
        for (int i = 0; i < 10; ++i) v.coeffs(i) = rng.uniform(-1.0, 1.0);
        double beta = rng.uniform(-1.0, 1.0), alpha = rng.uniform(-1.0, 1.0);
        if (beta > alpha) std::swap(beta, alpha);
        CHECK(space_norm(op, beta, v) <= space_norm(op, alpha, v) * (1.0 + 1e-12));
    }
}

TEST_CASE("shifted accumulates the offset and is invertible") {
    SpectralOperator op = make_operator({-1.0});
    CHECK(shifted(op, 0.5).eigenvalues(0) == doctest::Approx(-0.5));
    SpectralOperator neu = neumann_laplacian_1d(1.0, 3);
    SpectralOperator sh = shifted(neu, -1.0);
    CHECK(sh.eigenvalues(0) == doctest::Approx(-2.0));
    CHECK(sh.eigenvalues(2) == doctest::Approx(-2.0 - 4.0 * kPi * kPi));
    CHECK(sh.shift == doctest::Approx(-1.0));
    SpectralOperator back = shifted(sh, 1.0);
    CHECK((back.eigenvalues - neu.eigenvalues).abs().maxCoeff() <= 1e-15);
    CHECK(back.shift == doctest::Approx(0.0));
}

TEST_CASE("synthesize/analyze: round trip, Parseval, constant mode") {
    SpectralOperator op = neumann_laplacian_1d(1.0, 16);
    StateVector e0{Eigen::VectorXd::Zero(16), 0.0};
    e0.coeffs(0) = 1.0;
    GridField g = synthesize(op, e0, 64);
    CHECK((g.values.array() - 1.0).abs().maxCoeff() <= 1e-14);

    SplitMix64 rng(7);
    for (int c = 0; c < 20; ++c) {
        StateVector x{Eigen::VectorXd(16), 0.0};
        for (int i = 0; i < 16; ++i) x.coeffs(i) = rng.uniform(-1.0, 1.0);
        StateVector back = analyze(op, synthesize(op, x, 64));
        CHECK((back.coeffs - x.coeffs).norm() <= 1e-10 * x.coeffs.norm());
        CHECK(std::abs(grid_l2_norm(synthesize(op, x, 64)) - x.x_norm()) <=
              1e-8 * x.x_norm());
    }

    SpectralOperator dir = dirichlet_laplacian_1d(16);
    StateVector x{Eigen::VectorXd(16), 0.0};
    for (int i = 0; i < 16; ++i) x.coeffs(i) = rng.uniform(-1.0, 1.0);
    StateVector back = analyze(dir, synthesize(dir, x, 64));
    CHECK((back.coeffs - x.coeffs).norm() <= 1e-10 * x.coeffs.norm());

    SpectralOperator abstract = make_operator({-1.0, -2.0});
    StateVector a2{Eigen::VectorXd::Ones(2), 0.0};
    CHECK_THROWS(synthesize(abstract, a2, 16));
    CHECK_THROWS(synthesize(op, e0, 8));  // M < N
}

TEST_CASE("semigroup contractivity and analytic smoothing") {
    SplitMix64 rng(8);
    for (int c = 0; c < 50; ++c) {
        std::vector<double> lam(6);
        for (auto& l : lam) l = -rng.uniform(0.01, 40.0);
        std::sort(lam.begin(), lam.end(), std::greater<>());
        SpectralOperator op = make_operator(lam);
        StateVector x{Eigen::VectorXd(6), 0.0};
        for (int i = 0; i < 6; ++i) x.coeffs(i) = rng.uniform(-1.0, 1.0);
        const double t = rng.uniform(0.0, 5.0);
        CHECK(semigroup_apply(op, t, x).x_norm() <= x.x_norm() * (1.0 + 1e-14));

        // t |A T(t) x| <= c |x| with c = max over the spectrum of t(-l)e^{lt}
        if (t > 0.0) {
            StateVector tx = semigroup_apply(op, t, x);
            StateVector atx{(op.eigenvalues * tx.coeffs.array()).matrix(), 0.0};
            double c_bound = 0.0;
            for (double l : lam) c_bound = std::max(c_bound, t * (-l) * std::exp(l * t));
            CHECK(t * atx.x_norm() <= c_bound * x.x_norm() * (1.0 + 1e-12));
        }
    }
}
