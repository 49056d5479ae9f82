#include "entfb/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

namespace entfb {

NoiseBasis::NoiseBasis(const ModelParams& p, double dt) {
    const double s = std::sqrt(0.5 * dt);  // channel increments have variance dt/2
    const double lam = p.lambda;
    const double eta = p.eta;
    cx_self_ = (1.0 + lam) * s;
    cx_other_ = -lam * s;
    cx_v_ = (lam == 0.0) ? 0.0 : lam * std::sqrt(2.0 * (1.0 - eta) / eta) * s;
    cy_ = s;
    if (eta > 0.0) {
        cw_x_ = std::sqrt(eta) * s;
        cw_v_ = std::sqrt(2.0 * (1.0 - eta)) * s;
    }
    needs_v_ = eta > 0.0 && eta < 1.0;
}

Mat4 NoiseBasis::step_covariance_rate() const {
    Mat4 cov = Mat4::Zero();
    cov(0, 0) = cov(2, 2) = cx_self_ * cx_self_ + cx_other_ * cx_other_ + cx_v_ * cx_v_;
    cov(0, 2) = cov(2, 0) = 2.0 * cx_self_ * cx_other_ - cx_v_ * cx_v_;
    cov(1, 1) = cov(3, 3) = cy_ * cy_;
    const double dt = 2.0 * cy_ * cy_;  // cy = sqrt(dt/2)
    return cov / dt;
}

namespace {

struct TrajStats {
    std::array<double, 10> moments{};  // upper triangle of <v v^T>, row-major
    double current_mean = 0.0;
};

constexpr std::array<std::pair<int, int>, 10> kUpper = {{{0, 0},
                                                         {0, 1},
                                                         {0, 2},
                                                         {0, 3},
                                                         {1, 1},
                                                         {1, 2},
                                                         {1, 3},
                                                         {2, 2},
                                                         {2, 3},
                                                         {3, 3}}};

struct StepCoeffs {
    double ax_self, ax_cross, ay_self, ay_cross;
    double eta_dt, sqrt_eta;
};

TrajStats run_trajectory(const ModelParams& p, const SimConfig& cfg, const NoiseBasis& nb,
                         const StepCoeffs& c, std::int64_t burn_steps, std::int64_t avg_steps,
                         std::uint64_t traj_index, Traj0Series* series) {
    Xoshiro256pp rng(cfg.seed, traj_index);
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;

    for (std::int64_t k = 0; k < burn_steps; ++k) {
        const NoiseBasis::Draw d = nb.sample(rng);
        const double nx1 = c.ax_self * x1 + c.ax_cross * x2 + d.nx1;
        const double nx2 = c.ax_cross * x1 + c.ax_self * x2 + d.nx2;
        const double ny1 = c.ay_self * y1 + c.ay_cross * y2 + d.ny1;
        const double ny2 = c.ay_cross * y1 + c.ay_self * y2 + d.ny2;
        x1 = nx1;
        x2 = nx2;
        y1 = ny1;
        y2 = ny2;
    }

    std::array<double, 10> sums{};
    double current_sum = 0.0;
    for (std::int64_t k = 0; k < avg_steps; ++k) {
        const NoiseBasis::Draw d = nb.sample(rng);
        // Ito convention: the current samples the pre-step state.
        current_sum += c.eta_dt * (x1 - x2) + c.sqrt_eta * d.dw_diff;
        const double nx1 = c.ax_self * x1 + c.ax_cross * x2 + d.nx1;
        const double nx2 = c.ax_cross * x1 + c.ax_self * x2 + d.nx2;
        const double ny1 = c.ay_self * y1 + c.ay_cross * y2 + d.ny1;
        const double ny2 = c.ay_cross * y1 + c.ay_self * y2 + d.ny2;
        x1 = nx1;
        x2 = nx2;
        y1 = ny1;
        y2 = ny2;
        sums[0] += x1 * x1;
        sums[1] += x1 * y1;
        sums[2] += x1 * x2;
        sums[3] += x1 * y2;
        sums[4] += y1 * y1;
        sums[5] += y1 * x2;
        sums[6] += y1 * y2;
        sums[7] += x2 * x2;
        sums[8] += x2 * y2;
        sums[9] += y2 * y2;
        if (series) {
            const double t = (static_cast<double>(burn_steps + k + 1)) * cfg.dt;
            series->x1.time.push_back(t);
            series->x1.value.push_back(x1);
            series->y1.time.push_back(t);
            series->y1.value.push_back(y1);
            series->x2.time.push_back(t);
            series->x2.value.push_back(x2);
            series->y2.time.push_back(t);
            series->y2.value.push_back(y2);
            if (p.eta > 0.0) {
                const double current =
                    (c.eta_dt * (x1 - x2) + c.sqrt_eta * d.dw_diff) / cfg.dt;
                series->current.time.push_back(t);
                series->current.value.push_back(current);
            }
        }
    }

    TrajStats out;
    const double inv_n = 1.0 / static_cast<double>(avg_steps);
    for (std::size_t i = 0; i < 10; ++i) out.moments[i] = sums[i] * inv_n;
    out.current_mean = current_sum / (static_cast<double>(avg_steps) * cfg.dt);
    return out;
}

void validate_config(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        throw Error(ErrorCode::InvalidConfig, "dt must be positive and finite");
    }
    if (!(cfg.burn_in >= 0.0) || !(cfg.horizon > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "burn_in must be >= 0 and horizon > 0");
    }
    if (cfg.n_traj < 1) {
        throw Error(ErrorCode::InvalidConfig, "n_traj must be >= 1");
    }
    if (cfg.threads < 0) {
        throw Error(ErrorCode::InvalidConfig, "threads must be >= 0");
    }
}

}  // namespace

EnsembleStats simulate_ensemble(const ModelParams& p, const SimConfig& cfg) {
    validate_config(cfg);
    const double margin = stability_margin(p);
    if (!(margin > 0.0)) {
        std::ostringstream msg;
        msg << "stability margin " << margin << " <= 0";
        throw Error(ErrorCode::UnstableSystem, msg.str());
    }
    if (cfg.dt > 0.1 / margin) {
        std::ostringstream msg;
        msg << "dt = " << cfg.dt << " exceeds 0.1/margin = " << 0.1 / margin;
        throw Error(ErrorCode::StepTooLarge, msg.str());
    }

    const NoiseBasis nb(p, cfg.dt);
    // Assembly self-test: the analytic per-step covariance must reproduce
    // the diffusion matrix.
    const Mat4 n_expected = diffusion_matrix(p).n;
    const double assembly_gap = (nb.step_covariance_rate() - n_expected).cwiseAbs().maxCoeff();
    if (assembly_gap > 1e-12 * std::max(1.0, n_expected.cwiseAbs().maxCoeff())) {
        throw std::logic_error("noise assembly does not reproduce the diffusion matrix");
    }

    const auto burn_steps = static_cast<std::int64_t>(std::llround(cfg.burn_in / cfg.dt));
    const auto avg_steps =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(cfg.horizon / cfg.dt)));

    StepCoeffs c{};
    c.ax_self = 1.0 - cfg.dt * (0.5 - p.lambda);
    c.ax_cross = -cfg.dt * (p.lambda - p.chi);
    c.ay_self = 1.0 - 0.5 * cfg.dt;
    c.ay_cross = -cfg.dt * p.chi;
    c.eta_dt = p.eta * cfg.dt;
    c.sqrt_eta = std::sqrt(p.eta);

    const std::int64_t n = cfg.n_traj;
    std::vector<TrajStats> per_traj(static_cast<std::size_t>(n));
    Traj0Series series;
    Traj0Series* series_ptr = cfg.record_series ? &series : nullptr;

    unsigned n_threads = cfg.threads > 0
                             ? static_cast<unsigned>(cfg.threads)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n));

    auto work = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            per_traj[static_cast<std::size_t>(t)] =
                run_trajectory(p, cfg, nb, c, burn_steps, avg_steps,
                               static_cast<std::uint64_t>(t), t == 0 ? series_ptr : nullptr);
        }
    };
    if (n_threads <= 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        const std::int64_t chunk = (n + n_threads - 1) / n_threads;
        for (unsigned w = 0; w < n_threads; ++w) {
            const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
            const std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // Merge in trajectory order so the result is independent of threading.
    std::array<double, 10> mean{};
    double current_mean = 0.0;
    for (std::int64_t t = 0; t < n; ++t) {
        const auto& s = per_traj[static_cast<std::size_t>(t)];
        for (std::size_t i = 0; i < 10; ++i) mean[i] += s.moments[i];
        current_mean += s.current_mean;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : mean) v *= inv_n;
    current_mean *= inv_n;

    std::array<double, 10> var{};
    double current_var = 0.0;
    if (n > 1) {
        for (std::int64_t t = 0; t < n; ++t) {
            const auto& s = per_traj[static_cast<std::size_t>(t)];
            for (std::size_t i = 0; i < 10; ++i) {
                const double d = s.moments[i] - mean[i];
                var[i] += d * d;
            }
            const double dc = s.current_mean - current_mean;
            current_var += dc * dc;
        }
        const double denom = static_cast<double>(n - 1) * static_cast<double>(n);
        for (auto& v : var) v /= denom;
        current_var /= denom;
    }

    EnsembleStats stats;
    for (std::size_t i = 0; i < 10; ++i) {
        const auto [r, col] = kUpper[i];
        stats.gamma_hat(r, col) = mean[i];
        stats.gamma_hat(col, r) = mean[i];
        stats.gamma_se(r, col) = std::sqrt(var[i]);
        stats.gamma_se(col, r) = stats.gamma_se(r, col);
    }
    if (p.eta > 0.0) {
        stats.current = CurrentStats{current_mean, std::sqrt(current_var)};
    }
    if (cfg.record_series) stats.series = std::move(series);
    return stats;
}

CurrentSynthesis synthesize_current(const ModelParams& p, const SimConfig& cfg) {
    if (!(p.eta > 0.0)) {
        throw Error(ErrorCode::CurrentUndefined, "no homodyne current at eta = 0");
    }
    SimConfig with_series = cfg;
    with_series.record_series = true;
    const EnsembleStats stats = simulate_ensemble(p, with_series);
    CurrentSynthesis out;
    out.mean_current = stats.current->mean;
    out.std_error = stats.current->std_error;
    out.series = stats.series->current;
    return out;
}

}  // namespace entfb
