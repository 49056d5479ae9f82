#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "entfb/errors.hpp"

namespace entfb {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Complex = std::complex<double>;

/// Physical parameters of two damped, parametrically coupled bosonic modes
/// under homodyne-current feedback. All rates are in units of the amplitude
/// damping rate kappa (= 1), so every quantity here is dimensionless.
///
///   chi     parametric coupling strength, chi >= 0 (steady state needs chi < 1/2)
///   eta     detection efficiency in [0, 1]; eta = 0 means no feedback possible
///   lambda  feedback gain applied to the joint homodyne current
///   alpha   coherent drive amplitude; shifts the steady means only, the
///           fluctuation covariance never depends on it
struct ModelParams {
    double chi = 0.0;
    double eta = 1.0;
    double lambda = 0.0;
    Complex alpha{0.0, 0.0};
};

/// Validates and returns the parameter set.
/// Throws EtaOutOfRange, NegativeChi, or FeedbackWithoutDetection.
ModelParams make_params(double chi, double eta, double lambda, Complex alpha = Complex{0.0, 0.0});

/// Drift matrix of the fluctuation dynamics dv/dt = -M v + noise,
/// component order (x1, y1, x2, y2). Symmetric; x and y sectors decouple.
struct DriftMatrix {
    Mat4 m = Mat4::Zero();
};

/// Symmetrized noise correlation matrix N of the same process,
/// defined by <n n^T>_sym = N. Positive semidefinite for eta in (0,1].
struct DiffusionMatrix {
    Mat4 n = Mat4::Zero();
};

/// Steady-state first moments (<X1>, <Y1>, <X2>, <Y2>). Symmetric under
/// mode exchange and independent of eta and lambda.
struct MeanVector {
    Vec4 means = Vec4::Zero();
};

DriftMatrix drift_matrix(const ModelParams& p);

DiffusionMatrix diffusion_matrix(const ModelParams& p);

/// Throws UnstableMeans when chi >= 1/2 (no stationary first moments).
MeanVector steady_means(const ModelParams& p);

/// Smallest eigenvalue of the drift matrix: min(1/2 - chi, 1/2 + chi,
/// 1/2 + chi - 2*lambda). Positive iff the process has a unique steady state.
double stability_margin(const ModelParams& p);

/// Closed-form drift spectrum {1/2-chi, 1/2-chi, 1/2+chi, 1/2+chi-2*lambda}.
std::array<double, 4> drift_eigenvalues(const ModelParams& p);

}  // namespace entfb
