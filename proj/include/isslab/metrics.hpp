#pragma once

#include "isslab/boundary.hpp"
#include "isslab/signal.hpp"
#include "isslab/solver.hpp"
#include "isslab/spectral.hpp"

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace isslab {

inline constexpr double kInfiniteQ = std::numeric_limits<double>::infinity();

/// Exact L^q(0,t) norm of a piecewise-constant signal; q may be infinity.
double lq_norm(const InputSignal& u, double q, double t);

/// inf{k >= 0 : int_0^t Phi(e^{s*eps} |u(s)| / k) ds <= 1}. Exact per step for
/// eps = 0, Gauss quadrature otherwise. Returns 0 for u identically zero.
double luxemburg_gauge(const InputSignal& u, const std::function<double(double)>& phi, double t,
                       double eps);

struct IssCertificate {
    double c1 = 1.0;
    double omega = 0.0;  // decay rate, must be positive
    double c2 = 0.0;
    double q = 2.0;
    std::string scope;
};

struct CertificateReport {
    double max_residual = 0.0;  // max over samples of |x(t)| - C1 e^{-wt}|x0| - C2 |u|_Lq
    double worst_time = 0.0;
    bool holds = false;  // max_residual <= tol
};

CertificateReport check_certificate(const SpectralOperator& op, const Trajectory& traj,
                                    const InputSignal& u, const IssCertificate& cert,
                                    double tol = 1e-9, double output_alpha = 0.0);

struct GainEstimate {
    double gain = 0.0;
    InputSignal witness;  // unit L^q norm on the optimization grid
    bool converged = true;
    int iterations = 0;
};

/// Largest amplification |x(t0)|_{X_alpha} / |u|_{L^2(0,t0)} over grid signals.
/// The time grid refines geometrically toward t0 so fast modes are resolved;
/// `step` caps the coarsest cell. Power iteration on the kernel Gram matrix.
GainEstimate estimate_gain_l2(const SpectralOperator& op, const ControlOperator& b, double t0,
                              double step, double output_alpha = 0.0);

/// Lower bound for the L^q gain by projected gradient ascent from 8 seeds
/// (the L^2 witness plus 7 random starts). Certified lower bound only.
GainEstimate estimate_gain_lq(const SpectralOperator& op, const ControlOperator& b, double q,
                              double t0, double step, int budget, std::uint64_t seed,
                              double output_alpha = 0.0);

struct CertificateFit {
    bool success = false;
    IssCertificate certificate;
    std::string failure_reason;
};

/// C1 = 1 and omega = -omega_A fixed from the spectrum; C2 is the smallest
/// value passing on all training runs. Unstable operators yield failure.
CertificateFit fit_certificate(const SpectralOperator& op,
                               const std::vector<std::pair<Trajectory, InputSignal>>& runs,
                               double q, double output_alpha = 0.0);

struct GainCell {
    double q = 0.0;
    int n_modes = 0;
    double gain = 0.0;
    std::uint64_t seed = 0;
    InputSignal witness;
};

struct GainScanResult {
    std::string scenario;
    double t0 = 0.0;
    std::vector<GainCell> cells;
    std::vector<double> q_values;
    std::vector<bool> divergence_flags;  // parallel to q_values
};

struct ScanSystem {
    std::string scenario;
    std::function<std::pair<SpectralOperator, ControlOperator>(int)> build;  // modes -> (A, B)
    double output_alpha = 0.0;
};

GainScanResult sharpness_scan(const ScanSystem& system, const std::vector<double>& q_list,
                              const std::vector<int>& n_list, double t0, double step, int budget,
                              std::uint64_t seed, double divergence_threshold = 2.0);

}  // namespace isslab
