#include "isslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isslab {

namespace {
constexpr double kPi = std::numbers::pi;

void require_strictly_negative(const SpectralOperator& op, const char* what) {
    if (!op.strictly_negative()) {
        throw std::domain_error(std::string(what) +
                                ": operator has eigenvalues >= 0; shift first");
    }
}
}  // namespace

std::string to_string(Basis b) {
    switch (b) {
        case Basis::NeumannCos: return "neumann-cos";
        case Basis::DirichletSin: return "dirichlet-sin";
        case Basis::Abstract: return "abstract";
    }
    return "abstract";
}

SpectralOperator make_operator(const std::vector<double>& eigenvalues) {
    if (eigenvalues.empty()) {
        throw std::invalid_argument("make_operator: empty eigenvalue sequence");
    }
    for (double lam : eigenvalues) {
        if (!std::isfinite(lam)) {
            throw std::invalid_argument("make_operator: non-finite eigenvalue");
        }
    }
    std::vector<double> sorted = eigenvalues;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    SpectralOperator op;
    op.eigenvalues = Eigen::Map<const Eigen::ArrayXd>(sorted.data(),
                                                      static_cast<Eigen::Index>(sorted.size()));
    op.basis = Basis::Abstract;
    return op;
}

SpectralOperator neumann_laplacian_1d(double a, Eigen::Index n_modes) {
    if (a <= 0.0) throw std::invalid_argument("neumann_laplacian_1d: a must be > 0");
    if (n_modes < 1) throw std::invalid_argument("neumann_laplacian_1d: N must be >= 1");
    SpectralOperator op;
    op.eigenvalues.resize(n_modes);
    for (Eigen::Index n = 0; n < n_modes; ++n) {
        const double npi = static_cast<double>(n) * kPi;
        op.eigenvalues(n) = -npi * npi - a;
    }
    op.basis = Basis::NeumannCos;
    return op;
}

SpectralOperator dirichlet_laplacian_1d(Eigen::Index n_modes) {
    if (n_modes < 1) throw std::invalid_argument("dirichlet_laplacian_1d: N must be >= 1");
    SpectralOperator op;
    op.eigenvalues.resize(n_modes);
    for (Eigen::Index n = 0; n < n_modes; ++n) {
        const double npi = static_cast<double>(n + 1) * kPi;
        op.eigenvalues(n) = -npi * npi;
    }
    op.basis = Basis::DirichletSin;
    return op;
}

SpectralOperator shifted(const SpectralOperator& op, double eps) {
    SpectralOperator out = op;
    out.eigenvalues += eps;
    out.shift += eps;
    return out;
}

StateVector semigroup_apply(const SpectralOperator& op, double t, const StateVector& x) {
    if (t < 0.0) throw std::domain_error("semigroup_apply: t must be >= 0");
    if (x.size() != op.size()) throw std::invalid_argument("semigroup_apply: length mismatch");
    StateVector out = x;
    out.coeffs.array() *= (op.eigenvalues * t).exp();
    return out;
}

StateVector fractional_apply(const SpectralOperator& op, double alpha, const StateVector& x) {
    require_strictly_negative(op, "fractional_apply");
    if (alpha < -1.0 || alpha > 1.0) {
        throw std::domain_error("fractional_apply: alpha must lie in [-1, 1]");
    }
    if (x.size() != op.size()) throw std::invalid_argument("fractional_apply: length mismatch");
    StateVector out = x;
    out.coeffs.array() *= (-op.eigenvalues).pow(alpha);
    out.space_index = x.space_index - alpha;
    return out;
}

double space_norm(const SpectralOperator& op, double alpha, const StateVector& x) {
    if (alpha == 0.0) {
        if (x.size() != op.size()) throw std::invalid_argument("space_norm: length mismatch");
        return x.coeffs.norm();
    }
    return fractional_apply(op, alpha, x).coeffs.norm();
}

Eigen::MatrixXd basis_matrix(const SpectralOperator& op, Eigen::Index m_points) {
    if (op.basis == Basis::Abstract) {
        throw std::domain_error("basis_matrix: abstract basis has no grid representation");
    }
    if (m_points < op.size()) {
        throw std::invalid_argument("basis_matrix: need M >= N grid points");
    }
    const Eigen::Index n_modes = op.size();
    Eigen::MatrixXd phi(m_points, n_modes);
    const double sqrt2 = std::sqrt(2.0);
    for (Eigen::Index m = 0; m < m_points; ++m) {
        const double xi = static_cast<double>(m) / static_cast<double>(m_points - 1);
        for (Eigen::Index n = 0; n < n_modes; ++n) {
            if (op.basis == Basis::NeumannCos) {
                phi(m, n) = (n == 0) ? 1.0 : sqrt2 * std::cos(static_cast<double>(n) * kPi * xi);
            } else {
                phi(m, n) = sqrt2 * std::sin(static_cast<double>(n + 1) * kPi * xi);
            }
        }
    }
    return phi;
}

Eigen::VectorXd trapezoid_weights(Eigen::Index m_points) {
    const double h = 1.0 / static_cast<double>(m_points - 1);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(m_points, h);
    w(0) *= 0.5;
    w(m_points - 1) *= 0.5;
    return w;
}

GridField synthesize(const SpectralOperator& op, const StateVector& x, Eigen::Index m_points) {
    if (x.size() != op.size()) throw std::invalid_argument("synthesize: length mismatch");
    GridField g;
    g.values = basis_matrix(op, m_points) * x.coeffs;
    g.basis = op.basis;
    return g;
}

StateVector analyze(const SpectralOperator& op, const GridField& g) {
    if (g.basis != op.basis) throw std::invalid_argument("analyze: basis mismatch");
    if (g.size() < op.size()) throw std::invalid_argument("analyze: need M >= N grid points");
    const Eigen::MatrixXd phi = basis_matrix(op, g.size());
    const Eigen::VectorXd w = trapezoid_weights(g.size());
    StateVector x;
    x.coeffs = phi.transpose() * w.cwiseProduct(g.values);
    return x;
}

double grid_l2_norm(const GridField& g) {
    const Eigen::VectorXd w = trapezoid_weights(g.size());
    return std::sqrt(w.dot(g.values.cwiseProduct(g.values)));
}

}  // namespace isslab
