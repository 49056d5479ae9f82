#pragma once

#include <Eigen/Dense>

#include "entfb/model.hpp"

namespace entfb {

/// Stationary symmetrized covariance of the quadrature fluctuations,
/// component order (x1, y1, x2, y2). Stored symmetrized.
///
/// For the two-mode model the matrix has equal 2x2 diagonal (per-mode)
/// blocks and an off-diagonal cross-mode block, with no x-y mixing.
class CovarianceState {
  public:
    CovarianceState() { g_ = 0.5 * Mat4::Identity(); }
    explicit CovarianceState(const Mat4& gamma) : g_(0.5 * (gamma + gamma.transpose())) {}

    const Mat4& matrix() const { return g_; }
    double operator()(int i, int j) const { return g_(i, j); }

    /// Per-mode 2x2 block in (x, y) order; mode is 1 or 2.
    Eigen::Matrix2d mode_block(int mode) const;

    /// Cross-mode 2x2 block, rows (x1, y1) against columns (x2, y2).
    Eigen::Matrix2d cross_block() const;

  private:
    Mat4 g_;
};

/// Solves M*G + G*M^T = N for the stationary covariance G of a general
/// 4x4 problem with symmetric drift. Uses the vectorized linear system;
/// deterministic. The relative residual is checked against 1e-12.
///
/// Throws UnstableSystem if the smallest drift eigenvalue is <= min_margin,
/// NotConverged if the residual tolerance is not met.
CovarianceState solve_lyapunov(const DriftMatrix& m, const DiffusionMatrix& n,
                               double min_margin = 1e-9);

/// Model-specific closed-form stationary covariance; independent of the
/// Lyapunov solver and used to cross-check it.
/// Throws UnstableSystem if the stability margin is <= min_margin.
CovarianceState closed_form_covariance(const ModelParams& p, double min_margin = 1e-9);

/// Fluctuation variance of X1 - X2. Equals 1/(1 + 2*chi) at lambda = 0;
/// values below 1 (two vacua) signal nonclassical correlation.
double epr_variance(const CovarianceState& g);

}  // namespace entfb
