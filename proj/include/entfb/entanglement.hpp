#pragma once

#include <utility>

#include "entfb/covariance.hpp"

namespace entfb {

/// Two-mode symplectic form: block-diagonal with 2x2 blocks ((0,1),(-1,0)).
const Mat4& symplectic_form();

/// Symplectic spectrum (nu1 <= nu2) of a symmetric positive definite
/// covariance: moduli of the (pairwise +-i nu) eigenvalues of Omega*Gamma,
/// each pair reported once. Physical states have nu >= 1/2.
/// Throws NotPositiveDefinite.
std::pair<double, double> symplectic_eigenvalues(const CovarianceState& g);

/// Heisenberg check: smallest symplectic eigenvalue >= 1/2 - tol.
bool is_physical(const CovarianceState& g, double tol = 1e-9);

/// Gaussian partial transposition of mode 2 (momentum sign flip):
/// Lambda * Gamma * Lambda with Lambda = diag(1, 1, 1, -1).
CovarianceState partial_transpose(const CovarianceState& g);

/// Smallest symplectic eigenvalue of the partially transposed covariance,
/// evaluated from the determinant closed form for states with equal
/// diagonal blocks. Entangled iff the result is < 1/2.
///
/// Throws StructureViolation if the diagonal blocks differ beyond 1e-10;
/// BranchViolation if a radicand is negative beyond -1e-12 (tiny negatives
/// are clamped to zero).
double pt_zeta(const CovarianceState& g);

/// Logarithmic negativity L = max(0, -log2(2*zeta)).
double log_negativity(const CovarianceState& g);

struct EntanglementReport {
    double zeta = 0.0;            // smallest PT symplectic eigenvalue
    double log_negativity = 0.0;  // entanglement monotone, >= 0
    double nu_min = 0.0;          // smallest symplectic eigenvalue of Gamma itself
    double epr_variance = 0.0;    // Var(x1 - x2)
};

EntanglementReport entanglement_report(const CovarianceState& g);

}  // namespace entfb
