#include "isslab/metrics.hpp"

#include "isslab/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isslab {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNodes[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGlWeights[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

struct ClippedStep {
    double lo, hi, value;
};

std::vector<ClippedStep> clip_steps(const InputSignal& u, double t) {
    std::vector<ClippedStep> steps;
    const auto& bp = u.breakpoints();
    const auto& vals = u.values();
    for (std::size_t k = 0; k < vals.size(); ++k) {
        const double lo = bp[k];
        const double hi = std::min(bp[k + 1], t);
        if (hi > lo) steps.push_back({lo, hi, vals[k]});
        if (bp[k + 1] >= t) break;
    }
    return steps;
}

// Kernel of the input-to-state map: column k holds the contribution of a
// unit input on [t_k, t_{k+1}] to the mode coefficients at t0, weighted by
// (-lambda_n)^alpha for the output norm.
struct GainProblem {
    Eigen::MatrixXd kernel;     // n x K
    std::vector<double> grid;   // K+1 points, 0 .. t0
    Eigen::VectorXd cell_len;   // K cell lengths
};

GainProblem build_gain_problem(const SpectralOperator& op, const ControlOperator& b, double t0,
                               double step, double output_alpha) {
    if (!op.strictly_negative())
        throw std::invalid_argument("estimate_gain: operator must be strictly negative");
    if (!(t0 > 0.0) || !(step > 0.0))
        throw std::invalid_argument("estimate_gain: t0 and step must be positive");
    if (b.coeffs.size() != op.size())
        throw std::invalid_argument("estimate_gain: dimension mismatch");

    // Offsets back from t0: geometric refinement resolves the fastest mode,
    // uniform multiples of `step` cap the coarse cells.
    const double lam_fast = -op.eigenvalues.minCoeff();
    std::vector<double> taus = {0.0, t0};
    double tau = std::min(0.25 / lam_fast, t0);
    while (tau < t0) {
        taus.push_back(tau);
        tau *= 1.12;
    }
    for (double s = step; s < t0; s += step) taus.push_back(s);
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end(),
                           [&](double a, double c) { return c - a < 1e-14 * t0; }),
               taus.end());

    GainProblem p;
    p.grid.reserve(taus.size());
    for (auto it = taus.rbegin(); it != taus.rend(); ++it) p.grid.push_back(t0 - *it);
    // accumulated uniform offsets can land within the dedup tolerance of t0,
    // leaving a first grid point of order 1e-16; the endpoints are exact
    p.grid.front() = 0.0;
    p.grid.back() = t0;
    const auto n = op.size();
    const auto cells = static_cast<Eigen::Index>(p.grid.size()) - 1;
    p.kernel.resize(n, cells);
    p.cell_len.resize(cells);
    for (Eigen::Index k = 0; k < cells; ++k) {
        const double h = p.grid[k + 1] - p.grid[k];
        p.cell_len(k) = h;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double lam = op.eigenvalues(i);
            const double w = output_alpha == 0.0 ? 1.0 : std::pow(-lam, output_alpha);
            p.kernel(i, k) = w * b.coeffs(i) * std::exp(lam * (t0 - p.grid[k + 1])) *
                             phi1(lam * h) * h;
        }
    }
    return p;
}

InputSignal witness_signal(const GainProblem& p, const Eigen::VectorXd& u) {
    std::vector<double> vals(u.data(), u.data() + u.size());
    return InputSignal(p.grid, vals);
}

double lq_of_cells(const Eigen::VectorXd& u, const Eigen::VectorXd& len, double q) {
    if (std::isinf(q)) return u.cwiseAbs().maxCoeff();
    return std::pow((u.array().abs().pow(q) * len.array()).sum(), 1.0 / q);
}

}  // namespace

double lq_norm(const InputSignal& u, double q, double t) {
    if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
    if (t < 0.0) throw std::invalid_argument("lq_norm: t must be >= 0");
    if (u.is_zero()) return 0.0;
    if (std::isinf(q)) {
        double m = 0.0;
        const auto& bp = u.breakpoints();
        const auto& vals = u.values();
        for (std::size_t k = 0; k < vals.size(); ++k) {
            if (bp[k] > t) break;  // interval no longer intersects [0, t]
            m = std::max(m, std::abs(vals[k]));
        }
        return m;
    }
    double acc = 0.0;
    for (const auto& s : clip_steps(u, t)) acc += std::pow(std::abs(s.value), q) * (s.hi - s.lo);
    return std::pow(acc, 1.0 / q);
}

double luxemburg_gauge(const InputSignal& u, const std::function<double(double)>& phi, double t,
                       double eps) {
    if (t < 0.0 || eps < 0.0)
        throw std::invalid_argument("luxemburg_gauge: t and eps must be >= 0");
    if (std::abs(phi(0.0)) > 1e-12)
        throw std::invalid_argument("luxemburg_gauge: gauge function must vanish at 0");
    double prev = 0.0;
    for (double probe : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double v = phi(probe);
        if (!(v > prev)) throw std::invalid_argument("luxemburg_gauge: gauge not increasing");
        prev = v;
    }
    const auto steps = clip_steps(u, t);
    bool all_zero = true;
    for (const auto& s : steps) all_zero = all_zero && s.value == 0.0;
    if (steps.empty() || all_zero) return 0.0;

    auto integral = [&](double k) {
        double acc = 0.0;
        for (const auto& s : steps) {
            const double av = std::abs(s.value);
            if (av == 0.0) continue;
            if (eps == 0.0) {
                acc += (s.hi - s.lo) * phi(av / k);
            } else {
                const double mid = 0.5 * (s.lo + s.hi);
                const double half = 0.5 * (s.hi - s.lo);
                for (int j = 0; j < 16; ++j) {
                    const double sj = mid + half * kGlNodes[j];
                    acc += half * kGlWeights[j] * phi(std::exp(sj * eps) * av / k);
                }
            }
        }
        return acc;
    };

    double hi = lq_norm(u, kInfiniteQ, t) * std::exp(eps * t) * std::max(t, 1.0);
    for (int i = 0; i < 200 && integral(hi) > 1.0; ++i) hi *= 2.0;
    double lo = hi / 2.0;
    for (int i = 0; i < 400 && integral(lo) <= 1.0; ++i) {
        hi = lo;
        lo /= 2.0;
    }
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        (integral(mid) <= 1.0 ? hi : lo) = mid;
    }
    return hi;
}

CertificateReport check_certificate(const SpectralOperator& op, const Trajectory& traj,
                                    const InputSignal& u, const IssCertificate& cert, double tol,
                                    double output_alpha) {
    if (!(cert.omega > 0.0) || cert.c1 < 0.0 || cert.c2 < 0.0)
        throw std::invalid_argument("check_certificate: need omega > 0, C1, C2 >= 0");
    StateVector x0{traj.states.col(0), 0.0};
    const double x0n = space_norm(op, output_alpha, x0);
    CertificateReport rep;
    rep.max_residual = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        StateVector x{traj.states.col(static_cast<Eigen::Index>(k)), 0.0};
        const double res = space_norm(op, output_alpha, x) -
                           cert.c1 * std::exp(-cert.omega * t) * x0n -
                           cert.c2 * lq_norm(u, cert.q, t);
        if (res > rep.max_residual) {
            rep.max_residual = res;
            rep.worst_time = t;
        }
    }
    rep.holds = rep.max_residual <= tol;
    return rep;
}

GainEstimate estimate_gain_l2(const SpectralOperator& op, const ControlOperator& b, double t0,
                              double step, double output_alpha) {
    const GainProblem p = build_gain_problem(op, b, t0, step, output_alpha);
    // L^2-scaled kernel: columns divided by sqrt(cell length).
    const Eigen::MatrixXd a = p.kernel * p.cell_len.cwiseSqrt().cwiseInverse().asDiagonal();
    const Eigen::Index cells = a.cols();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(cells, 1.0 / std::sqrt(double(cells)));
    GainEstimate est;
    est.converged = false;
    double sigma = 0.0;
    for (int it = 0; it < 10000; ++it) {
        Eigen::VectorXd w = a.transpose() * (a * v);
        const double nw = w.norm();
        if (nw == 0.0) break;
        v = w / nw;
        const double s = std::sqrt((a * v).squaredNorm());
        est.iterations = it + 1;
        if (std::abs(s - sigma) <= 1e-10 * std::max(s, 1e-300)) {
            sigma = s;
            est.converged = true;
            break;
        }
        sigma = s;
    }
    est.gain = sigma;
    const Eigen::VectorXd u = v.cwiseQuotient(p.cell_len.cwiseSqrt());
    est.witness = witness_signal(p, u);
    return est;
}

GainEstimate estimate_gain_lq(const SpectralOperator& op, const ControlOperator& b, double q,
                              double t0, double step, int budget, std::uint64_t seed,
                              double output_alpha) {
    if (q < 1.0) throw std::invalid_argument("estimate_gain_lq: q must be >= 1");
    const GainProblem p = build_gain_problem(op, b, t0, step, output_alpha);
    const Eigen::MatrixXd& m = p.kernel;
    const Eigen::VectorXd& len = p.cell_len;
    const Eigen::Index cells = m.cols();

    auto normalize_q = [&](Eigen::VectorXd u) {
        const double nq = lq_of_cells(u, len, q);
        if (nq > 0.0) u /= nq;
        return u;
    };
    auto objective = [&](const Eigen::VectorXd& u) { return (m * u).norm(); };

    // KKT-aligned ascent direction: the L^q-ball point maximizing <g, u>.
    auto best_response = [&](const Eigen::VectorXd& g) {
        Eigen::VectorXd v(cells);
        if (std::isinf(q)) {
            for (Eigen::Index k = 0; k < cells; ++k) v(k) = g(k) >= 0.0 ? 1.0 : -1.0;
            return v;
        }
        if (q == 1.0) {
            Eigen::Index kb = 0;
            (g.cwiseAbs().cwiseQuotient(len)).maxCoeff(&kb);
            v.setZero();
            v(kb) = (g(kb) >= 0.0 ? 1.0 : -1.0) / len(kb);
            return v;
        }
        const double expnt = 1.0 / (q - 1.0);
        for (Eigen::Index k = 0; k < cells; ++k) {
            const double r = std::abs(g(k)) / len(k);
            v(k) = (g(k) >= 0.0 ? 1.0 : -1.0) * std::pow(r, expnt);
        }
        return normalize_q(v);
    };

    GainEstimate l2 = estimate_gain_l2(op, b, t0, step, output_alpha);
    GainEstimate est;
    est.converged = true;
    SplitMix64 rng(seed);
    for (int s = 0; s < 8; ++s) {
        Eigen::VectorXd u(cells);
        if (s == 0) {
            for (Eigen::Index k = 0; k < cells; ++k) u(k) = l2.witness.values()[std::size_t(k)];
        } else {
            for (Eigen::Index k = 0; k < cells; ++k) u(k) = rng.uniform(-1.0, 1.0);
        }
        u = std::isinf(q) ? (u.array().sign() + (u.array() == 0.0).cast<double>()).matrix().eval()
                          : normalize_q(u);
        double jb = objective(u);
        if (jb > est.gain) {
            est.gain = jb;
            est.witness = witness_signal(p, u);
        }
        for (int it = 0; it < budget; ++it) {
            const Eigen::VectorXd mu = m * u;
            const double nm = mu.norm();
            if (nm == 0.0) break;
            const Eigen::VectorXd g = m.transpose() * (mu / nm);
            Eigen::VectorXd v = best_response(g);
            Eigen::VectorXd cand = u + 0.5 * (v - u);
            cand = std::isinf(q)
                       ? (cand.array().max(-1.0).min(1.0)).matrix().eval()
                       : normalize_q(cand);
            const double jc = objective(cand);
            est.iterations += 1;
            if (jc <= jb * (1.0 + 1e-13)) {
                // try the full best-response step before giving up
                const double jv = objective(v);
                if (jv > jb * (1.0 + 1e-13)) {
                    u = v;
                    jb = jv;
                    continue;
                }
                break;
            }
            u = cand;
            jb = jc;
        }
        if (jb > est.gain) {
            est.gain = jb;
            est.witness = witness_signal(p, u);
        }
    }
    return est;
}

CertificateFit fit_certificate(const SpectralOperator& op,
                               const std::vector<std::pair<Trajectory, InputSignal>>& runs,
                               double q, double output_alpha) {
    CertificateFit fit;
    const double omega_a = op.growth_bound();
    if (omega_a >= 0.0) {
        fit.failure_reason = "operator growth bound is nonnegative, no decaying certificate";
        return fit;
    }
    if (runs.empty()) {
        fit.failure_reason = "no training runs";
        return fit;
    }
    double c2 = 0.0;
    for (const auto& [traj, u] : runs) {
        StateVector x0{traj.states.col(0), 0.0};
        const double x0n = space_norm(op, output_alpha, x0);
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            const double t = traj.times[k];
            StateVector x{traj.states.col(static_cast<Eigen::Index>(k)), 0.0};
            const double excess =
                space_norm(op, output_alpha, x) - std::exp(omega_a * t) * x0n;
            if (excess <= 0.0) continue;
            const double un = lq_norm(u, q, t);
            if (un > 0.0) c2 = std::max(c2, excess / un);
        }
    }
    fit.success = true;
    fit.certificate = {1.0, -omega_a, c2, q, ""};
    return fit;
}

GainScanResult sharpness_scan(const ScanSystem& system, const std::vector<double>& q_list,
                              const std::vector<int>& n_list, double t0, double step, int budget,
                              std::uint64_t seed, double divergence_threshold) {
    if (q_list.empty() || n_list.empty())
        throw std::invalid_argument("sharpness_scan: q and N lists must be non-empty");
    GainScanResult res;
    res.scenario = system.scenario;
    res.t0 = t0;
    res.q_values = q_list;
    std::uint64_t cell_index = 0;
    for (double q : q_list) {
        double first_gain = 0.0, last_gain = 0.0;
        for (std::size_t j = 0; j < n_list.size(); ++j) {
            const int n = n_list[j];
            auto [op, b] = system.build(n);
            const std::uint64_t cell_seed = seed + 0x9e3779b97f4a7c15ULL * (cell_index + 1);
            GainEstimate g = (q == 2.0)
                                 ? estimate_gain_l2(op, b, t0, step, system.output_alpha)
                                 : estimate_gain_lq(op, b, q, t0, step, budget, cell_seed,
                                                    system.output_alpha);
            res.cells.push_back({q, n, g.gain, cell_seed, g.witness});
            if (j == 0) first_gain = g.gain;
            if (j + 1 == n_list.size()) last_gain = g.gain;
            ++cell_index;
        }
        res.divergence_flags.push_back(first_gain > 0.0 &&
                                       last_gain / first_gain > divergence_threshold);
    }
    return res;
}

}  // namespace isslab
