#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace isslab {

enum class Basis { NeumannCos, DirichletSin, Abstract };

std::string to_string(Basis b);

/// Diagonal self-adjoint generator given by a finite, non-increasing
/// eigenvalue sequence. The growth bound of the associated semigroup is the
/// largest eigenvalue.
struct SpectralOperator {
    Eigen::ArrayXd eigenvalues;  // sorted non-increasing
    Basis basis = Basis::Abstract;
    double shift = 0.0;  // accumulated rescaling offset

    Eigen::Index size() const { return eigenvalues.size(); }
    double growth_bound() const { return eigenvalues(0); }
    bool strictly_negative() const { return eigenvalues(0) < 0.0; }
};

/// State in coefficient form. space_index declares which X_alpha norm is
/// canonical for this vector; the X_0 norm is the plain Euclidean norm of
/// the coefficients (Parseval).
struct StateVector {
    Eigen::VectorXd coeffs;
    double space_index = 0.0;

    Eigen::Index size() const { return coeffs.size(); }
    double x_norm() const { return coeffs.norm(); }
};

/// Physical-space view of a state on equispaced points of [0,1], including
/// both endpoints.
struct GridField {
    Eigen::VectorXd values;
    Basis basis = Basis::Abstract;

    Eigen::Index size() const { return values.size(); }
};

SpectralOperator make_operator(const std::vector<double>& eigenvalues);
SpectralOperator neumann_laplacian_1d(double a, Eigen::Index n_modes);
SpectralOperator dirichlet_laplacian_1d(Eigen::Index n_modes);
SpectralOperator shifted(const SpectralOperator& op, double eps);

StateVector semigroup_apply(const SpectralOperator& op, double t, const StateVector& x);
StateVector fractional_apply(const SpectralOperator& op, double alpha, const StateVector& x);
double space_norm(const SpectralOperator& op, double alpha, const StateVector& x);

/// Eigenfunction values on m equispaced points of [0,1]: column n holds
/// phi_n evaluated on the grid.
Eigen::MatrixXd basis_matrix(const SpectralOperator& op, Eigen::Index m_points);

/// Trapezoid quadrature weights on m equispaced points of [0,1].
Eigen::VectorXd trapezoid_weights(Eigen::Index m_points);

GridField synthesize(const SpectralOperator& op, const StateVector& x, Eigen::Index m_points);
StateVector analyze(const SpectralOperator& op, const GridField& g);

/// L2(0,1) norm of a grid field by trapezoid quadrature.
double grid_l2_norm(const GridField& g);

}  // namespace isslab
