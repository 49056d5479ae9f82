#include "entfb/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace entfb {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EtaOutOfRange: return "EtaOutOfRange";
        case ErrorCode::NegativeChi: return "NegativeChi";
        case ErrorCode::FeedbackWithoutDetection: return "FeedbackWithoutDetection";
        case ErrorCode::UnstableMeans: return "UnstableMeans";
        case ErrorCode::UnstableSystem: return "UnstableSystem";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::StructureViolation: return "StructureViolation";
        case ErrorCode::BranchViolation: return "BranchViolation";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::CurrentUndefined: return "CurrentUndefined";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "UnknownError";
}

ModelParams make_params(double chi, double eta, double lambda, Complex alpha) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        std::ostringstream msg;
        msg << "eta = " << eta << " outside [0, 1]";
        throw Error(ErrorCode::EtaOutOfRange, msg.str());
    }
    if (!(chi >= 0.0)) {
        std::ostringstream msg;
        msg << "chi = " << chi << " must be >= 0";
        throw Error(ErrorCode::NegativeChi, msg.str());
    }
    if (eta == 0.0 && lambda != 0.0) {
        throw Error(ErrorCode::FeedbackWithoutDetection,
                    "eta = 0 leaves no current to feed back; lambda must be 0");
    }
    if (!std::isfinite(chi) || !std::isfinite(eta) || !std::isfinite(lambda) ||
        !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw Error(ErrorCode::InvalidConfig, "parameters must be finite");
    }
    return ModelParams{chi, eta, lambda, alpha};
}

DriftMatrix drift_matrix(const ModelParams& p) {
    DriftMatrix d;
    const double half = 0.5;
    d.m(0, 0) = half - p.lambda;
    d.m(1, 1) = half;
    d.m(2, 2) = half - p.lambda;
    d.m(3, 3) = half;
    d.m(0, 2) = d.m(2, 0) = p.lambda - p.chi;
    d.m(1, 3) = d.m(3, 1) = p.chi;
    return d;
}

DiffusionMatrix diffusion_matrix(const ModelParams& p) {
    DiffusionMatrix d;
    // lambda + lambda^2/eta; zero feedback contributes no extra noise.
    const double mu = (p.lambda == 0.0) ? 0.0 : p.lambda + p.lambda * p.lambda / p.eta;
    d.n(0, 0) = d.n(2, 2) = 0.5 + mu;
    d.n(0, 2) = d.n(2, 0) = -mu;
    d.n(1, 1) = d.n(3, 3) = 0.5;
    return d;
}

MeanVector steady_means(const ModelParams& p) {
    if (p.chi >= 0.5) {
        throw Error(ErrorCode::UnstableMeans, "no stationary means for chi >= 1/2");
    }
    const double sqrt2 = std::sqrt(2.0);
    // -i sqrt(2) (alpha - alpha*) / (1 - 2 chi) and
    // -sqrt(2) (alpha + alpha*) / (1 + 2 chi), both real.
    const double x = 2.0 * sqrt2 * p.alpha.imag() / (1.0 - 2.0 * p.chi);
    const double y = -2.0 * sqrt2 * p.alpha.real() / (1.0 + 2.0 * p.chi);
    MeanVector v;
    v.means << x, y, x, y;
    return v;
}

std::array<double, 4> drift_eigenvalues(const ModelParams& p) {
    return {0.5 - p.chi, 0.5 - p.chi, 0.5 + p.chi, 0.5 + p.chi - 2.0 * p.lambda};
}

double stability_margin(const ModelParams& p) {
    return std::min({0.5 - p.chi, 0.5 + p.chi, 0.5 + p.chi - 2.0 * p.lambda});
}

}  // namespace entfb
