#include "entfb/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace entfb {

const Mat4& symplectic_form() {
    static const Mat4 omega = [] {
        Mat4 w = Mat4::Zero();
        w(0, 1) = 1.0;
        w(1, 0) = -1.0;
        w(2, 3) = 1.0;
        w(3, 2) = -1.0;
        return w;
    }();
    return omega;
}

namespace {

std::pair<double, double> symplectic_spectrum_unchecked(const Mat4& gamma) {
    const Eigen::EigenSolver<Mat4> es(symplectic_form() * gamma);
    std::array<double, 4> mods{};
    for (int i = 0; i < 4; ++i) mods[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()(i));
    std::sort(mods.begin(), mods.end());
    // +-i nu pairs: adjacent moduli must agree after sorting.
    const double pairing_tol = 1e-9;
    for (int k = 0; k < 2; ++k) {
        const double a = mods[static_cast<std::size_t>(2 * k)];
        const double b = mods[static_cast<std::size_t>(2 * k + 1)];
        if (std::abs(a - b) > pairing_tol * std::max(1.0, b)) {
            std::ostringstream msg;
            msg << "symplectic spectrum failed to pair: |" << a << " - " << b << "|";
            throw Error(ErrorCode::NotPositiveDefinite, msg.str());
        }
    }
    const double nu1 = 0.5 * (mods[0] + mods[1]);
    const double nu2 = 0.5 * (mods[2] + mods[3]);
    return {nu1, nu2};
}

}  // namespace

std::pair<double, double> symplectic_eigenvalues(const CovarianceState& g) {
    const Eigen::SelfAdjointEigenSolver<Mat4> es(g.matrix(), Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) {
        std::ostringstream msg;
        msg << "covariance not positive definite (min eigenvalue "
            << es.eigenvalues().minCoeff() << ")";
        throw Error(ErrorCode::NotPositiveDefinite, msg.str());
    }
    return symplectic_spectrum_unchecked(g.matrix());
}

bool is_physical(const CovarianceState& g, double tol) {
    const Eigen::SelfAdjointEigenSolver<Mat4> es(g.matrix(), Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) return false;
    return symplectic_spectrum_unchecked(g.matrix()).first >= 0.5 - tol;
}

CovarianceState partial_transpose(const CovarianceState& g) {
    Mat4 flipped = g.matrix();
    for (int i = 0; i < 4; ++i) {
        if (i != 3) {
            flipped(i, 3) = -flipped(i, 3);
            flipped(3, i) = -flipped(3, i);
        }
    }
    return CovarianceState(flipped);
}

double pt_zeta(const CovarianceState& g) {
    const Eigen::Matrix2d a = g.mode_block(1);
    const Eigen::Matrix2d b = g.mode_block(2);
    const double block_gap = (a - b).cwiseAbs().maxCoeff();
    if (block_gap > 1e-10) {
        std::ostringstream msg;
        msg << "diagonal blocks differ by " << block_gap;
        throw Error(ErrorCode::StructureViolation, msg.str());
    }

    const Eigen::Matrix2d gam = 0.5 * (a + b);
    const Eigen::Matrix2d sig = g.cross_block();
    const double delta = gam.determinant() - sig.determinant();
    const double det_full = g.matrix().determinant();

    const auto branch_violation = [](const char* what, double value) -> Error {
        std::ostringstream msg;
        msg << what << " radicand " << value << " below -1e-12";
        return Error(ErrorCode::BranchViolation, msg.str());
    };

    const double inner_radicand = delta * delta - det_full;
    if (inner_radicand < -1e-12) throw branch_violation("inner", inner_radicand);
    const double inner = std::sqrt(std::max(inner_radicand, 0.0));

    // Smaller root of nu^4 - 2 delta nu^2 + det = 0 in the cancellation-free
    // form det / (delta + inner); identical to delta - inner exactly.
    if (delta + inner <= 0.0) {
        const double outer = delta - inner;
        if (outer < -1e-12) throw branch_violation("outer", outer);
        return 0.0;
    }
    const double zeta_sq = det_full / (delta + inner);
    if (zeta_sq < -1e-12) throw branch_violation("outer", zeta_sq);
    return std::sqrt(std::max(zeta_sq, 0.0));
}

namespace {

// zeta within 1e-12 of the separability threshold counts as separable.
double clamped_log_negativity(double zeta) {
    const double doubled = 2.0 * zeta;
    if (doubled >= 1.0 - 1e-12) return 0.0;
    return -std::log2(doubled);
}

}  // namespace

double log_negativity(const CovarianceState& g) { return clamped_log_negativity(pt_zeta(g)); }

EntanglementReport entanglement_report(const CovarianceState& g) {
    EntanglementReport r;
    r.zeta = pt_zeta(g);
    r.log_negativity = clamped_log_negativity(r.zeta);
    r.nu_min = symplectic_eigenvalues(g).first;
    r.epr_variance = epr_variance(g);
    return r;
}

}  // namespace entfb
