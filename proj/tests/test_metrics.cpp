#include "isslab/boundary.hpp"
#include "isslab/metrics.hpp"
#include "isslab/rng.hpp"
#include "isslab/solver.hpp"

#include "doctest.h"

#include <cmath>

using namespace isslab;

TEST_CASE("lq_norm on closed-form examples") {
    // u = 1 on [0,1), -1 on [1,2)
    InputSignal u({0.0, 1.0, 2.0}, {1.0, -1.0});
    CHECK(lq_norm(u, 2.0, 2.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(lq_norm(u, 1.0, 2.0) == doctest::Approx(2.0));
    CHECK(lq_norm(u, kInfiniteQ, 2.0) == doctest::Approx(1.0));
    // truncation at t = 1 drops the second cell
    CHECK(lq_norm(u, 2.0, 1.0) == doctest::Approx(1.0));
    CHECK(lq_norm(u, 2.0, 0.5) == doctest::Approx(std::sqrt(0.5)));
    // scaling is homogeneous of degree one
    CHECK(lq_norm(u.scaled(5.0), 1.5, 2.0) ==
          doctest::Approx(5.0 * lq_norm(u, 1.5, 2.0)));
    CHECK(lq_norm(InputSignal::zero(), 2.0, 1.0) == 0.0);
    CHECK_THROWS(lq_norm(u, 0.5, 2.0));
}

TEST_CASE("luxemburg gauge reduces to lq_norm for power gauges") {
    InputSignal u = InputSignal::random_piecewise(101, 6, 2.0, 1.5, 0.0);
    for (double q : {1.0, 2.0, 3.5}) {
        auto phi = [q](double s) { return std::pow(s, q); };
        CHECK(luxemburg_gauge(u, phi, 1.5, 0.0) ==
              doctest::Approx(lq_norm(u, q, 1.5)).epsilon(1e-9));
    }
}

TEST_CASE("luxemburg gauge for e^s - 1 and a constant input") {
    // Phi(s) = e^s - 1 with u = 1 on [0,1]: int Phi(1/k) dt = 1 at k = 1/ln 2.
    InputSignal u = InputSignal::constant(1.0, 1.0);
    auto phi = [](double s) { return std::expm1(s); };
    CHECK(luxemburg_gauge(u, phi, 1.0, 0.0) ==
          doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-9));
    CHECK(luxemburg_gauge(InputSignal::zero(), phi, 1.0, 0.0) == 0.0);
}

TEST_CASE("exponential weighting only increases the gauge") {
    // the integrand carries the weight e^{s*eps} >= 1
    InputSignal u = InputSignal::random_piecewise(102, 8, 1.0, 2.0, 0.0);
    auto phi = [](double s) { return s * s; };
    const double g0 = luxemburg_gauge(u, phi, 2.0, 0.0);
    const double g1 = luxemburg_gauge(u, phi, 2.0, 0.5);
    CHECK(g1 >= g0 * (1.0 - 1e-12));
    CHECK(g1 > g0);
    CHECK_THROWS(luxemburg_gauge(u, phi, -1.0, 0.0));
}

TEST_CASE("luxemburg gauge rejects a non-monotone gauge function") {
    InputSignal u = InputSignal::constant(1.0, 1.0);
    auto bad = [](double s) { return std::sin(s); };
    CHECK_THROWS(luxemburg_gauge(u, bad, 4.0, 0.0));
}

TEST_CASE("l2 gain of a single stable mode") {
    // A = -1, b = 1: sup over u of |x(t0)| / ||u||_{L^2} -> 1/sqrt(2) as
    // t0 -> infinity (the optimal input is e^{-(t0-s)}).
    SpectralOperator op = make_operator({-1.0});
    ControlOperator b = custom_control(Eigen::ArrayXd::Ones(1));
    GainEstimate g = estimate_gain_l2(op, b, 10.0, 0.05);
    CHECK(g.converged);
    CHECK(g.gain == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("l2 gain grows with the horizon") {
    SpectralOperator op = make_operator({-1.0});
    ControlOperator b = custom_control(Eigen::ArrayXd::Ones(1));
    const double g1 = estimate_gain_l2(op, b, 0.5, 0.05).gain;
    const double g2 = estimate_gain_l2(op, b, 2.0, 0.05).gain;
    const double g3 = estimate_gain_l2(op, b, 8.0, 0.05).gain;
    CHECK(g1 < g2);
    CHECK(g2 < g3);
}

TEST_CASE("lq gain at q = 2 agrees with the operator-norm computation") {
    SpectralOperator op = neumann_laplacian_1d(1.0, 16);
    ControlOperator b = neumann_control(op);
    GainEstimate l2 = estimate_gain_l2(op, b, 1.0, 1.0 / 32.0);
    GainEstimate lq = estimate_gain_lq(op, b, 2.0, 1.0, 1.0 / 32.0, 60, 5);
    CHECK(lq.gain == doctest::Approx(l2.gain).epsilon(0.01));
}

TEST_CASE("l-infinity gain is bounded below by the constant-input response") {
    SpectralOperator op = neumann_laplacian_1d(1.0, 16);
    ControlOperator b = neumann_control(op);
    const double t0 = 1.0, step = 1.0 / 32.0;
    StateVector x0{Eigen::VectorXd::Zero(16), 0.0};
    InputSignal ones = InputSignal::constant(1.0, t0);
    const double reachable =
        solve_linear(op, b, x0, ones, t0, step).final_state().x_norm();
    GainEstimate g = estimate_gain_lq(op, b, kInfiniteQ, t0, step, 60, 5);
    CHECK(g.gain >= reachable * (1.0 - 1e-9));
}

TEST_CASE("lq witness reproduces the certified gain when re-simulated") {
    SpectralOperator op = neumann_laplacian_1d(1.0, 16);
    ControlOperator b = neumann_control(op);
    for (double q : {1.5, 3.0}) {
        GainEstimate g = estimate_gain_lq(op, b, q, 1.0, 1.0 / 32.0, 60, 5);
        StateVector x0{Eigen::VectorXd::Zero(16), 0.0};
        const double reached =
            solve_linear(op, b, x0, g.witness, 1.0, 1.0 / 64.0).final_state().x_norm();
        const double denom = lq_norm(g.witness, q, 1.0);
        CHECK(reached / denom == doctest::Approx(g.gain).epsilon(0.01));
    }
}

TEST_CASE("check_certificate: doubling the input scales the residual slack") {
    SpectralOperator op = neumann_laplacian_1d(1.0, 16);
    ControlOperator b = neumann_control(op);
    StateVector x0{Eigen::VectorXd::Zero(16), 0.0};
    InputSignal u = InputSignal::random_piecewise(103, 6, 1.0, 1.0, 1.0 / 64.0);
    Trajectory traj = solve_linear(op, b, x0, u, 1.0, 1.0 / 64.0);
    IssCertificate loose{1.0, 1.0, 100.0, 2.0, "test"};
    CertificateReport rep = check_certificate(op, traj, u, loose);
    CHECK(rep.holds);
    IssCertificate tight{0.0, 1.0, 1e-9, 2.0, "test"};
    CertificateReport bad = check_certificate(op, traj, u, tight);
    CHECK_FALSE(bad.holds);
    CHECK(bad.max_residual > 0.0);
    CHECK(bad.worst_time > 0.0);
}

TEST_CASE("check_certificate honours the homogeneous decay part") {
    SpectralOperator op = neumann_laplacian_1d(1.0, 16);
    SplitMix64 rng(104);
    StateVector x0{Eigen::VectorXd(16), 0.0};
    for (int i = 0; i < 16; ++i) x0.coeffs(i) = rng.uniform(-1.0, 1.0);
    ControlOperator b = neumann_control(op);
    Trajectory traj = solve_linear(op, b, x0, InputSignal::zero(), 1.0, 1.0 / 64.0);
    // |T(t)x0| <= e^{-t}|x0| for the shifted Neumann operator with a = 1
    IssCertificate exact{1.0, 1.0, 0.0, 2.0, "decay"};
    CHECK(check_certificate(op, traj, InputSignal::zero(), exact).holds);
    IssCertificate toofast{1.0, 20.0, 0.0, 2.0, "decay"};
    CHECK_FALSE(check_certificate(op, traj, InputSignal::zero(), toofast).holds);
}

TEST_CASE("fit_certificate on homogeneous runs needs no input term") {
    SpectralOperator op = neumann_laplacian_1d(1.0, 16);
    ControlOperator b = neumann_control(op);
    SplitMix64 rng(105);
    std::vector<std::pair<Trajectory, InputSignal>> runs;
    for (int r = 0; r < 5; ++r) {
        StateVector x0{Eigen::VectorXd(16), 0.0};
        for (int i = 0; i < 16; ++i) x0.coeffs(i) = rng.uniform(-1.0, 1.0);
        runs.emplace_back(solve_linear(op, b, x0, InputSignal::zero(), 1.0, 1.0 / 32.0),
                          InputSignal::zero());
    }
    CertificateFit fit = fit_certificate(op, runs, 2.0);
    CHECK(fit.success);
    CHECK(fit.certificate.c2 <= 1e-12);
    for (const auto& [traj, u] : runs)
        CHECK(check_certificate(op, traj, u, fit.certificate).holds);
}

TEST_CASE("fit_certificate refuses an unstable generator") {
    SpectralOperator op = make_operator({1.0});
    std::vector<std::pair<Trajectory, InputSignal>> runs;
    CertificateFit fit = fit_certificate(op, runs, 2.0);
    CHECK_FALSE(fit.success);
    CHECK_FALSE(fit.failure_reason.empty());
}

TEST_CASE("fit_certificate generalizes to unseen inputs of the same class") {
    SpectralOperator op = neumann_laplacian_1d(1.0, 16);
    ControlOperator b = neumann_control(op);
    StateVector x0{Eigen::VectorXd::Zero(16), 0.0};
    std::vector<std::pair<Trajectory, InputSignal>> runs;
    for (int r = 0; r < 20; ++r) {
        InputSignal u = InputSignal::random_piecewise(200 + r, 8, 1.0, 1.0, 1.0 / 64.0);
        runs.emplace_back(solve_linear(op, b, x0, u, 1.0, 1.0 / 64.0), u);
    }
    CertificateFit fit = fit_certificate(op, runs, 2.0);
    REQUIRE(fit.success);
    int failures = 0;
    for (int r = 0; r < 20; ++r) {
        InputSignal u = InputSignal::random_piecewise(900 + r, 8, 1.0, 1.0, 1.0 / 64.0);
        Trajectory traj = solve_linear(op, b, x0, u, 1.0, 1.0 / 64.0);
        // slack for the finite training sample: the fitted C2 is the sup over
        // the training runs only
        IssCertificate padded = fit.certificate;
        padded.c2 *= 1.5;
        if (!check_certificate(op, traj, u, padded).holds) ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("sharpness_scan flags the dyadic construction at q = 2 only") {
    ScanSystem system;
    system.scenario = "pathological";
    system.output_alpha = 0.0;
    system.build = [](int n) {
        std::vector<double> lam(static_cast<std::size_t>(n));
        Eigen::ArrayXd coeffs(n);
        for (int i = 0; i < n; ++i) {
            lam[static_cast<std::size_t>(i)] = -std::ldexp(1.0, i + 1);
            coeffs(i) = lam[static_cast<std::size_t>(i)] / static_cast<double>(i + 1);
        }
        return std::pair{make_operator(lam), custom_control(coeffs)};
    };
    GainScanResult scan = sharpness_scan(system, {2.0, kInfiniteQ}, {8, 12, 16}, 1.0,
                                         1.0 / 64.0, 60, 11, 2.0);
    REQUIRE(scan.q_values.size() == 2);
    REQUIRE(scan.divergence_flags.size() == 2);
    CHECK(scan.divergence_flags[0]);        // q = 2 diverges in N
    CHECK_FALSE(scan.divergence_flags[1]);  // q = infinity stays bounded
    CHECK(scan.cells.size() == 6);
}
