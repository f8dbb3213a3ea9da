#pragma once

#include "isslab/boundary.hpp"
#include "isslab/signal.hpp"
#include "isslab/spectral.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isslab {

/// Thrown when a semilinear solve exceeds the blow-up sentinel.
class BlowupError : public std::runtime_error {
public:
    BlowupError(double time, double norm, std::string detail)
        : std::runtime_error(std::move(detail)), time(time), norm(norm) {}
    double time;
    double norm;
};

struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXd states;  // one column per sample; rows are coefficients
                             // (spectral solvers) or grid values (reference_fd)
    std::string solver_tag;
    double step = 0.0;
    bool grid_refined = false;  // true when breakpoints forced extra samples

    Eigen::Index n_samples() const { return states.cols(); }
    Eigen::VectorXd state_at(double t, double tol = 1e-12) const;
    StateVector final_state() const { return {states.col(states.cols() - 1), 0.0}; }
};

struct Nonlinearity {
    enum class Kind { None, Cubic, LipschitzSine, LinearGain, Custom };

    Kind kind = Kind::None;
    double lipschitz = 0.0;  // declared global Lipschitz constant L_f
    double m1 = 0.0;         // form constants of <f(x),x> <= -m1 <Ax,x> + m2 |x|^2
    double m2 = 0.0;
    double growth = 0.0;     // constant growth envelope k(t) = growth
    double gain = 0.0;       // LinearGain coefficient
    std::function<double(double)> fn;  // Custom pointwise map

    static Nonlinearity none();
    static Nonlinearity cubic();
    static Nonlinearity lipschitz_sine(double lf);
    static Nonlinearity linear_gain(double c);
    static Nonlinearity custom(std::function<double(double)> fn, double lf, double m1, double m2);

    double pointwise(double v) const;
};

Trajectory solve_linear(const SpectralOperator& op, const ControlOperator& b,
                        const StateVector& x0, const InputSignal& u, double t_final,
                        double step);

Trajectory solve_semilinear(const SpectralOperator& op, const ControlOperator& b,
                            const Nonlinearity& f, const StateVector& x0, const InputSignal& u,
                            double t_final, double step);

enum class FdScenario { NeumannHeat, DirichletHeat };

/// Crank-Nicolson / central-difference reference solver in physical space.
/// Neumann flux enters through ghost points with the outward convention
/// -x'(0,t) = x'(1,t) = u(t); Dirichlet imposes x(0,t) = x(1,t) = u(t).
/// Used only as an independent oracle in tests and acceptance runs.
Trajectory reference_fd(FdScenario scenario, double a, const GridField& x0_grid,
                        const InputSignal& u, double t_final, double step);

/// Max over samples of the X_{-1}-norm discrepancy in the integrated identity
/// x(t) - x(0) = int_0^t [A x(s) + B u(s)] ds (trapezoid quadrature on the
/// state, exact integration of the piecewise-constant input).
double integral_identity_residual(const SpectralOperator& op, const ControlOperator& b,
                                  const Trajectory& traj, const InputSignal& u);

struct StructureSample {
    double pairing = 0.0;  // <f(x), x>
    double bound = 0.0;    // -m1 <Ax,x> + m2 |x|^2
    bool violated = false;
};

struct StructureReport {
    std::vector<StructureSample> samples;
    int violations = 0;
    // scalar hypothesis checks
    double omega_a = 0.0;
    bool form_condition_ok = false;      // 1 - m1 > 0 and (1-m1) omega_A + m2 < 0
    double form_margin = 0.0;            // -( (1-m1) omega_A + m2 )
    bool lipschitz_condition_ok = false; // omega_A + M L_f < 0 with M = 1
    double lipschitz_margin = 0.0;       // -( omega_A + L_f )
};

StructureReport verify_structure(const SpectralOperator& op, const Nonlinearity& f,
                                 const std::vector<StateVector>& samples);

/// phi_1(z) = (e^z - 1)/z with the removable singularity filled in by a
/// Taylor expansion near zero.
double phi1(double z);

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const std::string& column_prefix);

}  // namespace isslab
