#include "isslab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace isslab {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(ControlProvenance p) {
    switch (p) {
        case ControlProvenance::NeumannFlux: return "neumann-flux";
        case ControlProvenance::DirichletTrace: return "dirichlet-trace";
        case ControlProvenance::Pathological: return "pathological";
        case ControlProvenance::Custom: return "custom";
    }
    return "custom";
}

std::string to_string(SumVerdict v) {
    switch (v) {
        case SumVerdict::Converging: return "converging";
        case SumVerdict::Diverging: return "diverging";
        case SumVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ControlOperator neumann_control(const SpectralOperator& op) {
    if (op.basis != Basis::NeumannCos) {
        throw std::invalid_argument("neumann_control: operator basis is not neumann-cos");
    }
    // b_n = phi_n(0) + phi_n(1): scalar flux input drives both endpoints with
    // outward weight +1.
    ControlOperator b;
    b.coeffs.resize(op.size());
    b.coeffs(0) = 2.0;
    const double sqrt2 = std::sqrt(2.0);
    for (Eigen::Index n = 1; n < op.size(); ++n) {
        b.coeffs(n) = (n % 2 == 0) ? 2.0 * sqrt2 : 0.0;
    }
    b.provenance = ControlProvenance::NeumannFlux;
    return b;
}

ControlOperator dirichlet_control(const SpectralOperator& op) {
    if (op.basis != Basis::DirichletSin) {
        throw std::invalid_argument("dirichlet_control: operator basis is not dirichlet-sin");
    }
    // b_n = phi_n'(0) - phi_n'(1), the forcing picked up by integration by
    // parts when x(0,t) = x(1,t) = u(t). With phi_n'(xi) = sqrt(2) n pi
    // cos(n pi xi) this vanishes on even modes (antisymmetric about 1/2) and
    // equals 2 sqrt(2) n pi on odd ones.
    ControlOperator b;
    b.coeffs.resize(op.size());
    const double sqrt2 = std::sqrt(2.0);
    for (Eigen::Index i = 0; i < op.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        b.coeffs(i) = (static_cast<long>(n) % 2 == 1) ? 2.0 * sqrt2 * n * kPi : 0.0;
    }
    b.provenance = ControlProvenance::DirichletTrace;
    return b;
}

ControlOperator pathological_control(const SpectralOperator& op) {
    // Requires eigenvalues exactly -2^n, n = 1..N.
    for (Eigen::Index i = 0; i < op.size(); ++i) {
        const double expected = -std::ldexp(1.0, static_cast<int>(i) + 1);
        if (op.eigenvalues(i) != expected) {
            throw std::invalid_argument(
                "pathological_control: eigenvalues must be exactly -2^n, n = 1..N");
        }
    }
    ControlOperator b;
    b.coeffs.resize(op.size());
    for (Eigen::Index i = 0; i < op.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        b.coeffs(i) = -std::ldexp(1.0, static_cast<int>(i) + 1) / n;
    }
    b.provenance = ControlProvenance::Pathological;
    return b;
}

ControlOperator custom_control(Eigen::ArrayXd coeffs) {
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        if (!std::isfinite(coeffs(i))) {
            throw std::invalid_argument("custom_control: non-finite coefficient");
        }
    }
    ControlOperator b;
    b.coeffs = std::move(coeffs);
    b.provenance = ControlProvenance::Custom;
    return b;
}

double adjoint_pairing(const ControlOperator& b, const StateVector& psi) {
    if (b.size() != psi.size()) throw std::invalid_argument("adjoint_pairing: length mismatch");
    return (b.coeffs * psi.coeffs.array()).sum();
}

RegularityReport classify_regularity(const SpectralOperator& op, const ControlOperator& b,
                                     const std::vector<double>& alpha_grid) {
    if (!op.strictly_negative()) {
        throw std::domain_error("classify_regularity: operator must be strictly negative");
    }
    if (b.size() != op.size()) {
        throw std::invalid_argument("classify_regularity: length mismatch");
    }
    const Eigen::Index n = op.size();
    const Eigen::Index n_half = std::max<Eigen::Index>(1, n / 2);
    const Eigen::Index n_quarter = std::max<Eigen::Index>(1, n / 4);

    RegularityReport report;
    report.alpha_critical = 0.0;
    for (double alpha : alpha_grid) {
        Eigen::ArrayXd terms = b.coeffs.square() * (-op.eigenvalues).pow(2.0 * (alpha - 1.0));
        RegularityRow row;
        row.alpha = alpha;
        const double s_quarter = terms.head(n_quarter).sum();
        row.sum_half = terms.head(n_half).sum();
        row.sum_full = terms.sum();
        // Growth of successive dyadic block increments. A ratio below one means
        // the block sums form a contracting geometric tail; above one the tail
        // grows and the full series diverges.
        const double inc_lo = row.sum_half - s_quarter;
        const double inc_hi = row.sum_full - row.sum_half;
        row.growth_factor = (inc_lo > 0.0) ? inc_hi / inc_lo
                                           : (inc_hi > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        const double two_point_ratio = row.sum_full / std::max(row.sum_half, 1e-300);
        if (row.growth_factor >= 1.005 || two_point_ratio >= 2.0) {
            row.verdict = SumVerdict::Diverging;
        } else if (row.growth_factor <= 0.99) {
            row.verdict = SumVerdict::Converging;
        } else {
            row.verdict = SumVerdict::Inconclusive;
        }
        if (row.verdict == SumVerdict::Converging && alpha > report.alpha_critical) {
            report.alpha_critical = alpha;
        }
        report.rows.push_back(row);
    }
    report.q_critical = (report.alpha_critical > 0.0)
                            ? 1.0 / report.alpha_critical
                            : std::numeric_limits<double>::infinity();
    return report;
}

double adjoint_half_norm(const SpectralOperator& op, const ControlOperator& b) {
    if (!op.strictly_negative()) {
        throw std::domain_error("adjoint_half_norm: operator must be strictly negative");
    }
    return std::sqrt((b.coeffs.square() / (-op.eigenvalues)).sum());
}

}  // namespace isslab
