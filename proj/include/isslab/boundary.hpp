#pragma once

#include "isslab/spectral.hpp"

#include <string>
#include <vector>

namespace isslab {

enum class ControlProvenance { NeumannFlux, DirichletTrace, Pathological, Custom };

std::string to_string(ControlProvenance p);

/// Per-mode coefficients of a single-channel control operator B. Multi-channel
/// inputs are represented as a list of these; responses combine by summation.
struct ControlOperator {
    Eigen::ArrayXd coeffs;
    ControlProvenance provenance = ControlProvenance::Custom;

    Eigen::Index size() const { return coeffs.size(); }
};

enum class SumVerdict { Converging, Diverging, Inconclusive };

std::string to_string(SumVerdict v);

struct RegularityRow {
    double alpha = 0.0;
    double sum_half = 0.0;    // partial sum truncated at N/2 modes
    double sum_full = 0.0;    // partial sum over all N modes
    double growth_factor = 0.0;  // ratio of the last two dyadic block increments
    SumVerdict verdict = SumVerdict::Inconclusive;
};

/// Classification of the regularity order alpha with B in L(U, X_{-1+alpha}).
/// q_critical = 1/alpha_critical is the exponent threshold of the L^q-ISS
/// estimate; infinity when no alpha on the grid converges.
struct RegularityReport {
    std::vector<RegularityRow> rows;
    double alpha_critical = 0.0;  // 0 when nothing converges
    double q_critical = 0.0;      // +inf sentinel when alpha_critical == 0
};

ControlOperator neumann_control(const SpectralOperator& op);
ControlOperator dirichlet_control(const SpectralOperator& op);
ControlOperator pathological_control(const SpectralOperator& op);
ControlOperator custom_control(Eigen::ArrayXd coeffs);

/// B* as a functional: returns sum_n b_n psi_n.
double adjoint_pairing(const ControlOperator& b, const StateVector& psi);

RegularityReport classify_regularity(const SpectralOperator& op, const ControlOperator& b,
                                     const std::vector<double>& alpha_grid);

/// Norm of B* as a functional on X_{1/2}: sqrt(sum b_n^2 / (-lambda_n)).
double adjoint_half_norm(const SpectralOperator& op, const ControlOperator& b);

}  // namespace isslab
