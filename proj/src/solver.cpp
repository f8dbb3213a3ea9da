#include "isslab/solver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

namespace isslab {

namespace {

constexpr double kBlowupFactor = 1e8;

// Sample grid: every multiple of `step` in [0, t_final] plus every input
// breakpoint, so each step sees a single constant input value.
std::vector<double> build_grid(double t_final, double step, const InputSignal& u,
                               bool* refined) {
    if (!(t_final > 0.0) || !(step > 0.0))
        throw std::invalid_argument("solve: t_final and step must be positive");
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::ceil(t_final / step - 1e-9));
    grid.reserve(n + u.breakpoints().size() + 2);
    for (std::size_t k = 0; k <= n; ++k) grid.push_back(std::min(k * step, t_final));
    if (grid.back() < t_final) grid.push_back(t_final);
    *refined = false;
    for (double bp : u.breakpoints()) {
        if (bp <= 0.0 || bp >= t_final) continue;
        const double ratio = bp / step;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
            grid.push_back(bp);
            *refined = true;
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-13; }),
               grid.end());
    return grid;
}

Eigen::ArrayXd pointwise_on_grid(const Nonlinearity& f, const Eigen::ArrayXd& v) {
    Eigen::ArrayXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = f.pointwise(v(i));
    return out;
}

// f evaluated by collocation: synthesize, apply pointwise, analyze back.
Eigen::VectorXd eval_nonlinearity(const SpectralOperator& op, const Nonlinearity& f,
                                  const Eigen::VectorXd& x, const Eigen::MatrixXd& basis,
                                  const Eigen::VectorXd& weights) {
    if (f.kind == Nonlinearity::Kind::None) return Eigen::VectorXd::Zero(x.size());
    if (f.kind == Nonlinearity::Kind::LinearGain) return f.gain * x;
    const Eigen::ArrayXd field = (basis * x).array();
    const Eigen::ArrayXd mapped = pointwise_on_grid(f, field);
    return basis.transpose() * (weights.array() * mapped).matrix();
}

}  // namespace

double phi1(double z) {
    if (std::abs(z) < 1e-4) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    return std::expm1(z) / z;
}

Eigen::VectorXd Trajectory::state_at(double t, double tol) const {
    for (std::size_t k = 0; k < times.size(); ++k)
        if (std::abs(times[k] - t) <= tol * std::max(1.0, std::abs(t)))
            return states.col(static_cast<Eigen::Index>(k));
    throw std::invalid_argument("Trajectory::state_at: no sample at requested time");
}

Nonlinearity Nonlinearity::none() { return {}; }

Nonlinearity Nonlinearity::cubic() {
    Nonlinearity f;
    f.kind = Kind::Cubic;
    f.m1 = 0.0;
    f.m2 = 0.0;
    return f;
}

Nonlinearity Nonlinearity::lipschitz_sine(double lf) {
    if (!(lf >= 0.0)) throw std::invalid_argument("lipschitz_sine: lf must be >= 0");
    Nonlinearity f;
    f.kind = Kind::LipschitzSine;
    f.lipschitz = lf;
    return f;
}

Nonlinearity Nonlinearity::linear_gain(double c) {
    Nonlinearity f;
    f.kind = Kind::LinearGain;
    f.gain = c;
    f.lipschitz = std::abs(c);
    return f;
}

Nonlinearity Nonlinearity::custom(std::function<double(double)> fn, double lf, double m1,
                                  double m2) {
    Nonlinearity f;
    f.kind = Kind::Custom;
    f.fn = std::move(fn);
    f.lipschitz = lf;
    f.m1 = m1;
    f.m2 = m2;
    return f;
}

double Nonlinearity::pointwise(double v) const {
    switch (kind) {
        case Kind::None: return 0.0;
        case Kind::Cubic: return -v * v * v;
        case Kind::LipschitzSine: return lipschitz * std::sin(v);
        case Kind::LinearGain: return gain * v;
        case Kind::Custom: return fn(v);
    }
    throw std::logic_error("Nonlinearity::pointwise: bad kind");
}

Trajectory solve_linear(const SpectralOperator& op, const ControlOperator& b,
                        const StateVector& x0, const InputSignal& u, double t_final,
                        double step) {
    const Eigen::Index n = op.size();
    if (x0.coeffs.size() != n || b.coeffs.size() != n)
        throw std::invalid_argument("solve_linear: dimension mismatch");
    Trajectory traj;
    traj.solver_tag = "spectral-exact";
    traj.step = step;
    traj.times = build_grid(t_final, step, u, &traj.grid_refined);
    const auto s = static_cast<Eigen::Index>(traj.times.size());
    traj.states.resize(n, s);
    traj.states.col(0) = x0.coeffs;
    Eigen::VectorXd x = x0.coeffs;
    for (Eigen::Index k = 0; k + 1 < s; ++k) {
        const double h = traj.times[k + 1] - traj.times[k];
        const double uv = u.value(traj.times[k]);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double z = op.eigenvalues(i) * h;
            x(i) = std::exp(z) * x(i) + b.coeffs(i) * phi1(z) * h * uv;
        }
        traj.states.col(k + 1) = x;
    }
    return traj;
}

Trajectory solve_semilinear(const SpectralOperator& op, const ControlOperator& b,
                            const Nonlinearity& f, const StateVector& x0, const InputSignal& u,
                            double t_final, double step) {
    const Eigen::Index n = op.size();
    if (x0.coeffs.size() != n || b.coeffs.size() != n)
        throw std::invalid_argument("solve_semilinear: dimension mismatch");
    const bool needs_grid = f.kind == Nonlinearity::Kind::Cubic ||
                            f.kind == Nonlinearity::Kind::LipschitzSine ||
                            f.kind == Nonlinearity::Kind::Custom;
    if (needs_grid && op.basis == Basis::Abstract)
        throw std::invalid_argument("solve_semilinear: pointwise nonlinearity needs a trig basis");

    Eigen::MatrixXd basis;
    Eigen::VectorXd weights;
    if (needs_grid) {
        const auto m = static_cast<Eigen::Index>(std::max<Eigen::Index>(64, 4 * n));
        basis = basis_matrix(op, m);
        weights = trapezoid_weights(m);
    }

    Trajectory traj;
    traj.solver_tag = "etd1";
    traj.step = step;
    traj.times = build_grid(t_final, step, u, &traj.grid_refined);
    const auto s = static_cast<Eigen::Index>(traj.times.size());
    traj.states.resize(n, s);
    traj.states.col(0) = x0.coeffs;
    Eigen::VectorXd x = x0.coeffs;
    const double sentinel = kBlowupFactor * (x.norm() + 1.0);
    for (Eigen::Index k = 0; k + 1 < s; ++k) {
        const double h = traj.times[k + 1] - traj.times[k];
        const double uv = u.value(traj.times[k]);
        const Eigen::VectorXd fx = eval_nonlinearity(op, f, x, basis, weights);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double z = op.eigenvalues(i) * h;
            x(i) = std::exp(z) * x(i) + phi1(z) * h * (b.coeffs(i) * uv + fx(i));
        }
        if (!x.allFinite() || x.norm() > sentinel)
            throw BlowupError(traj.times[k + 1], x.allFinite() ? x.norm() : std::numeric_limits<double>::infinity(),
                              "solve_semilinear: state norm exceeded blow-up sentinel at t=" +
                                  std::to_string(traj.times[k + 1]));
        traj.states.col(k + 1) = x;
    }
    return traj;
}

Trajectory reference_fd(FdScenario scenario, double a, const GridField& x0_grid,
                        const InputSignal& u, double t_final, double step) {
    const Eigen::Index m = x0_grid.values.size();
    if (m < 3) throw std::invalid_argument("reference_fd: need at least 3 grid points");
    if (!(t_final > 0.0) || !(step > 0.0))
        throw std::invalid_argument("reference_fd: t_final and step must be positive");
    const double dxi = 1.0 / static_cast<double>(m - 1);
    const auto nsteps = static_cast<std::size_t>(std::llround(t_final / step));
    if (nsteps == 0 || std::abs(nsteps * step - t_final) > 1e-9 * t_final)
        throw std::invalid_argument("reference_fd: step must divide t_final");
    const double h = t_final / static_cast<double>(nsteps);

    const bool neumann = scenario == FdScenario::NeumannHeat;
    const Eigen::Index dim = neumann ? m : m - 2;  // Dirichlet unknowns are interior

    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    const double c = 1.0 / (dxi * dxi);
    Eigen::VectorXd src = Eigen::VectorXd::Zero(dim);
    if (neumann) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            trips.emplace_back(i, i, -2.0 * c - a);
            if (i > 0) trips.emplace_back(i, i - 1, (i == dim - 1) ? 2.0 * c : c);
            if (i < dim - 1) trips.emplace_back(i, i + 1, (i == 0) ? 2.0 * c : c);
        }
        // ghost points carry the outward flux -x'(0)=x'(1)=u
        src(0) = 2.0 / dxi;
        src(dim - 1) = 2.0 / dxi;
    } else {
        for (Eigen::Index i = 0; i < dim; ++i) {
            trips.emplace_back(i, i, -2.0 * c);
            if (i > 0) trips.emplace_back(i, i - 1, c);
            if (i < dim - 1) trips.emplace_back(i, i + 1, c);
        }
        src(0) = c;
        src(dim - 1) = c;
    }
    Eigen::SparseMatrix<double> lap(dim, dim);
    lap.setFromTriplets(trips.begin(), trips.end());

    Eigen::SparseMatrix<double> eye(dim, dim);
    eye.setIdentity();
    Eigen::SparseMatrix<double> lhs = eye - (h / 2.0) * lap;
    Eigen::SparseMatrix<double> rhs = eye + (h / 2.0) * lap;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(lhs);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("reference_fd: Crank-Nicolson factorization failed");

    Trajectory traj;
    traj.solver_tag = "fd-crank-nicolson";
    traj.step = h;
    traj.times.resize(nsteps + 1);
    traj.states.resize(m, static_cast<Eigen::Index>(nsteps + 1));
    Eigen::VectorXd x = neumann ? x0_grid.values : x0_grid.values.segment(1, dim).eval();
    auto store = [&](std::size_t k, double t) {
        traj.times[k] = t;
        if (neumann) {
            traj.states.col(static_cast<Eigen::Index>(k)) = x;
        } else {
            const double bv = u.value(t);
            traj.states(0, static_cast<Eigen::Index>(k)) = bv;
            traj.states.col(static_cast<Eigen::Index>(k)).segment(1, dim) = x;
            traj.states(m - 1, static_cast<Eigen::Index>(k)) = bv;
        }
    };
    store(0, 0.0);
    for (std::size_t k = 0; k < nsteps; ++k) {
        const double t = k * h;
        const double u_avg = (u.integral(t + h) - u.integral(t)) / h;
        const Eigen::VectorXd b = rhs * x + h * u_avg * src;
        x = lu.solve(b);
        store(k + 1, t + h);
    }
    return traj;
}

double integral_identity_residual(const SpectralOperator& op, const ControlOperator& b,
                                  const Trajectory& traj, const InputSignal& u) {
    const Eigen::Index n = op.size();
    if (traj.states.rows() != n || b.coeffs.size() != n)
        throw std::invalid_argument("integral_identity_residual: dimension mismatch");
    const auto s = static_cast<Eigen::Index>(traj.times.size());
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);  // trapezoid of A x(s)
    double worst = 0.0;
    for (Eigen::Index k = 1; k < s; ++k) {
        const double h = traj.times[k] - traj.times[k - 1];
        acc += (h / 2.0) *
               (op.eigenvalues * (traj.states.col(k - 1) + traj.states.col(k)).array()).matrix();
        const double iu = u.integral(traj.times[k]);
        StateVector diff{traj.states.col(k) - traj.states.col(0) - acc - iu * b.coeffs.matrix(),
                         0.0};
        worst = std::max(worst, space_norm(op, -1.0, diff));
    }
    return worst;
}

StructureReport verify_structure(const SpectralOperator& op, const Nonlinearity& f,
                                 const std::vector<StateVector>& samples) {
    StructureReport rep;
    rep.omega_a = op.growth_bound();
    rep.form_condition_ok = (1.0 - f.m1) > 0.0 && (1.0 - f.m1) * rep.omega_a + f.m2 < 0.0;
    rep.form_margin = -((1.0 - f.m1) * rep.omega_a + f.m2);
    rep.lipschitz_condition_ok = rep.omega_a + f.lipschitz < 0.0;
    rep.lipschitz_margin = -(rep.omega_a + f.lipschitz);

    const Eigen::Index n = op.size();
    const bool needs_grid = f.kind == Nonlinearity::Kind::Cubic ||
                            f.kind == Nonlinearity::Kind::LipschitzSine ||
                            f.kind == Nonlinearity::Kind::Custom;
    Eigen::MatrixXd basis;
    Eigen::VectorXd weights;
    if (needs_grid) {
        const auto m = static_cast<Eigen::Index>(std::max<Eigen::Index>(256, 4 * n));
        basis = basis_matrix(op, m);
        weights = trapezoid_weights(m);
    }
    for (const auto& sv : samples) {
        if (sv.coeffs.size() != n)
            throw std::invalid_argument("verify_structure: sample dimension mismatch");
        StructureSample smp;
        if (f.kind == Nonlinearity::Kind::None) {
            smp.pairing = 0.0;
        } else if (f.kind == Nonlinearity::Kind::LinearGain) {
            smp.pairing = f.gain * sv.coeffs.squaredNorm();
        } else {
            const Eigen::ArrayXd field = (basis * sv.coeffs).array();
            const Eigen::ArrayXd prod = pointwise_on_grid(f, field) * field;
            smp.pairing = (weights.array() * prod).sum();
        }
        const double ax_x = (op.eigenvalues * sv.coeffs.array().square()).sum();
        smp.bound = -f.m1 * ax_x + f.m2 * sv.coeffs.squaredNorm();
        const double tol = 1e-10 + 1e-8 * (std::abs(smp.pairing) + std::abs(smp.bound));
        smp.violated = smp.pairing > smp.bound + tol;
        if (smp.violated) ++rep.violations;
        rep.samples.push_back(smp);
    }
    return rep;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const std::string& column_prefix) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    out << "t";
    for (Eigen::Index i = 0; i < traj.states.rows(); ++i) out << "," << column_prefix << i;
    out << "\n";
    out << std::setprecision(17);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out << traj.times[k];
        for (Eigen::Index i = 0; i < traj.states.rows(); ++i)
            out << "," << traj.states(i, static_cast<Eigen::Index>(k));
        out << "\n";
    }
}

}  // namespace isslab
