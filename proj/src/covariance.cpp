#include "entfb/covariance.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace entfb {

Eigen::Matrix2d CovarianceState::mode_block(int mode) const {
    const int o = (mode == 1) ? 0 : 2;
    return g_.block<2, 2>(o, o);
}

Eigen::Matrix2d CovarianceState::cross_block() const { return g_.block<2, 2>(0, 2); }

namespace {

double symmetric_min_eigenvalue(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

CovarianceState solve_lyapunov(const DriftMatrix& m, const DiffusionMatrix& n,
                               double min_margin) {
    const double margin = symmetric_min_eigenvalue(m.m);
    if (!(margin > min_margin)) {
        std::ostringstream msg;
        msg << "drift margin " << margin << " <= " << min_margin;
        throw Error(ErrorCode::UnstableSystem, msg.str());
    }

    // Vectorize M G + G M^T = N as (I (x) M + M (x) I) vec(G) = vec(N).
    Eigen::Matrix<double, 16, 16> coeff = Eigen::Matrix<double, 16, 16>::Zero();
    for (int col_block = 0; col_block < 4; ++col_block) {
        coeff.block<4, 4>(4 * col_block, 4 * col_block) += m.m;
        for (int row_block = 0; row_block < 4; ++row_block) {
            coeff.block<4, 4>(4 * row_block, 4 * col_block) +=
                m.m(row_block, col_block) * Mat4::Identity();
        }
    }
    Eigen::Matrix<double, 16, 1> rhs;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) rhs(4 * j + i) = n.n(i, j);

    const Eigen::Matrix<double, 16, 1> solution = coeff.partialPivLu().solve(rhs);
    Mat4 gamma;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) gamma(i, j) = solution(4 * j + i);
    gamma = 0.5 * (gamma + gamma.transpose()).eval();

    const double residual = (m.m * gamma + gamma * m.m.transpose() - n.n)
                                .cwiseAbs()
                                .maxCoeff();
    const double scale = std::max(1.0, n.n.cwiseAbs().maxCoeff());
    if (!(residual <= 1e-12 * scale)) {
        std::ostringstream msg;
        msg << "Lyapunov residual " << residual << " exceeds " << 1e-12 * scale;
        throw Error(ErrorCode::NotConverged, msg.str());
    }
    return CovarianceState(gamma);
}

CovarianceState closed_form_covariance(const ModelParams& p, double min_margin) {
    const double margin = stability_margin(p);
    if (!(margin > min_margin)) {
        std::ostringstream msg;
        msg << "stability margin " << margin << " <= " << min_margin;
        throw Error(ErrorCode::UnstableSystem, msg.str());
    }

    const double chi = p.chi;
    const double lam = p.lambda;
    const double mu = (lam == 0.0) ? 0.0 : lam + lam * lam / p.eta;
    // Denominator factors as (1 - 2 chi)(1 + 2 chi - 4 lambda) and vanishes
    // exactly where the stability margin does.
    const double denom = 1.0 - 4.0 * lam + 8.0 * lam * chi - 4.0 * chi * chi;
    const double denom_y = 1.0 - 4.0 * chi * chi;

    const double g11 = (0.5 - lam + (1.0 - 2.0 * chi) * mu) / denom;
    const double g22 = 0.5 / denom_y;
    const double s11 = (chi - lam - (1.0 - 2.0 * chi) * mu) / denom;
    const double s22 = -chi / denom_y;

    Mat4 gamma = Mat4::Zero();
    gamma(0, 0) = gamma(2, 2) = g11;
    gamma(1, 1) = gamma(3, 3) = g22;
    gamma(0, 2) = gamma(2, 0) = s11;
    gamma(1, 3) = gamma(3, 1) = s22;
    return CovarianceState(gamma);
}

double epr_variance(const CovarianceState& g) {
    const Mat4& m = g.matrix();
    return m(0, 0) + m(2, 2) - 2.0 * m(0, 2);
}

}  // namespace entfb
