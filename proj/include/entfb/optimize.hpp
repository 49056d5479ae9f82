#pragma once

#include <cstdint>

#include "entfb/covariance.hpp"
#include "entfb/entanglement.hpp"

namespace entfb {

struct OptimizerConfig {
    int grid_points = 2001;          // coarse global scan of the admissible window
    double refine_tol = 1e-7;        // golden-section bracket width in lambda
    double stability_margin = 1e-9;  // minimum drift-spectrum margin kept
};

struct LambdaInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Connected window of feedback gains around lambda = 0 on which the steady
/// state exists (stability margin > margin) and satisfies the Heisenberg
/// bound (physicality tolerance 1e-9). The stability cap is
/// lambda < (1/2 + chi)/2 - margin; the physicality edge is located by
/// bisection to 1e-9, searching outward from 0 within [-4, (1/2 + chi)/2].
LambdaInterval valid_lambda_interval(double chi, double eta, double margin = 1e-9);

struct OptimizationResult {
    double lambda_star = 0.0;  // argmax of the log negativity over the window
    double l_fb = 0.0;         // maximized log negativity
    double l_nofb = 0.0;       // log negativity at lambda = 0
    LambdaInterval valid_interval;
    std::int64_t evaluations = 0;
};

/// Maximizes lambda -> log_negativity(closed_form_covariance(chi, eta, lambda))
/// over the admissible window: dense grid scan followed by golden-section
/// refinement of the best bracket. eta = 0 short-circuits to lambda = 0.
OptimizationResult maximize_log_negativity(double chi, double eta,
                                           const OptimizerConfig& cfg = OptimizerConfig{});

}  // namespace entfb
