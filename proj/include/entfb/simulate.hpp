#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entfb/covariance.hpp"
#include "entfb/model.hpp"
#include "entfb/rng.hpp"

namespace entfb {

/// Euler-Maruyama discretization of the feedback-modified
/// Ornstein-Uhlenbeck dynamics dv = -M v dt + dn. Times in 1/kappa units.
struct SimConfig {
    double dt = 1e-3;
    double burn_in = 10.0;   // discarded transient, should exceed 1/stability_margin
    double horizon = 100.0;  // averaged window per trajectory
    std::int64_t n_traj = 10000;
    std::uint64_t seed = 0;
    int threads = 0;             // 0 = hardware concurrency
    bool record_series = false;  // keep trajectory 0's sample paths
};

/// Per-step Gaussian increments of the six vacuum channels
/// (X1, Y1, X2, Y2 inputs plus the detection-inefficiency pair V1, V2)
/// mixed into the 4-component state noise and the measurement-noise
/// difference W1 - W2 that both the state and the current share.
class NoiseBasis {
  public:
    NoiseBasis(const ModelParams& p, double dt);

    struct Draw {
        double nx1, ny1, nx2, ny2;  // state noise increment
        double dw_diff;             // sqrt(eta)-scaled measurement noise difference
    };

    Draw sample(Xoshiro256pp& rng) const {
        const auto& zig = ZigguratNormal::instance();
        const double gx1 = zig(rng);
        const double gy1 = zig(rng);
        const double gx2 = zig(rng);
        const double gy2 = zig(rng);
        // V1 and V2 enter the state and the current only through V1 - V2;
        // gv carries that combination with the matching variance.
        const double gv = needs_v_ ? zig(rng) : 0.0;
        Draw d;
        d.nx1 = cx_self_ * gx1 + cx_other_ * gx2 + cx_v_ * gv;
        d.nx2 = cx_other_ * gx1 + cx_self_ * gx2 - cx_v_ * gv;
        d.ny1 = cy_ * gy1;
        d.ny2 = cy_ * gy2;
        d.dw_diff = cw_x_ * (gx1 - gx2) + cw_v_ * gv;
        return d;
    }

    /// Analytic covariance of the state-noise increment divided by dt;
    /// equals the diffusion matrix by construction (checked at startup).
    Mat4 step_covariance_rate() const;

    bool has_measurement_noise() const { return cw_x_ != 0.0 || cw_v_ != 0.0; }

  private:
    bool needs_v_ = false;
    double cx_self_ = 0.0, cx_other_ = 0.0, cx_v_ = 0.0;
    double cy_ = 0.0;
    double cw_x_ = 0.0, cw_v_ = 0.0;
};

struct CurrentStats {
    double mean = 0.0;
    double std_error = 0.0;
};

struct TimeSeries {
    std::vector<double> time;
    std::vector<double> value;
};

/// Sample paths of trajectory 0 over the averaging window.
struct Traj0Series {
    TimeSeries x1, y1, x2, y2;
    TimeSeries current;  // empty when eta = 0
};

struct EnsembleStats {
    Mat4 gamma_hat = Mat4::Zero();
    Mat4 gamma_se = Mat4::Zero();          // per-entry standard errors (n_traj > 1)
    std::optional<CurrentStats> current;   // absent when eta = 0
    std::optional<Traj0Series> series;     // present when cfg.record_series
};

/// Evolves an ensemble of trajectories, discards the burn-in, and
/// time-and-ensemble averages the second moments. Per-trajectory streams
/// are split off the master seed, and partial results merge in trajectory
/// order, so results are bit-identical for any thread count.
///
/// Throws UnstableSystem, StepTooLarge (dt > 0.1/stability_margin), or
/// InvalidConfig.
EnsembleStats simulate_ensemble(const ModelParams& p, const SimConfig& cfg);

struct CurrentSynthesis {
    double mean_current = 0.0;
    double std_error = 0.0;
    TimeSeries series;
};

/// Discretized joint homodyne current I_k dt = eta (X1 - X2) dt
/// + sqrt(eta) (dW1 - dW2), built from the same draws that drive the state.
/// The long-time mean converges to eta (<X1> - <X2>) = 0.
/// Throws CurrentUndefined when eta = 0.
CurrentSynthesis synthesize_current(const ModelParams& p, const SimConfig& cfg);

}  // namespace entfb
