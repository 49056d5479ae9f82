#include "entfb/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace entfb {

namespace {

constexpr double kPhysTol = 1e-9;         // Heisenberg slack accepted as physical
constexpr double kBisectTol = 1e-9;       // lambda resolution of the window edge
constexpr double kLambdaFloor = -4.0;     // generous search box below the paper's window

bool admissible(double chi, double eta, double lambda, double margin) {
    const ModelParams p{chi, eta, lambda, Complex{}};
    if (!(stability_margin(p) > margin)) return false;
    return is_physical(closed_form_covariance(p, margin), kPhysTol);
}

void check_domain(double chi, double eta) {
    if (!(chi >= 0.0 && chi < 0.5)) {
        throw Error(ErrorCode::InvalidConfig, "chi must lie in [0, 1/2)");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorCode::EtaOutOfRange, "eta must lie in [0, 1]");
    }
}

}  // namespace

LambdaInterval valid_lambda_interval(double chi, double eta, double margin) {
    check_domain(chi, eta);
    if (!(eta > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "interval search needs eta > 0");
    }
    if (!admissible(chi, eta, 0.0, margin)) return LambdaInterval{0.0, 0.0};
    const double stability_cap = 0.5 * (0.5 + chi) - margin;

    // Admissibility is not monotone in |lambda|: past the unphysical gap the
    // injected feedback noise makes states physical again. Only the connected
    // component around 0 counts, so scan outward for the first loss and
    // bisect that crossing.
    const auto outward_edge = [&](double cap) {
        constexpr int kScanSteps = 4096;
        double good = 0.0;
        for (int i = 1; i <= kScanSteps; ++i) {
            const double lam = cap * static_cast<double>(i) / kScanSteps;
            if (!admissible(chi, eta, lam, margin)) {
                double bad = lam;
                while (std::abs(bad - good) > kBisectTol) {
                    const double mid = 0.5 * (good + bad);
                    (admissible(chi, eta, mid, margin) ? good : bad) = mid;
                }
                return good;
            }
            good = lam;
        }
        return cap;
    };

    LambdaInterval w;
    w.hi = outward_edge(stability_cap);
    w.lo = outward_edge(kLambdaFloor);
    return w;
}

OptimizationResult maximize_log_negativity(double chi, double eta, const OptimizerConfig& cfg) {
    check_domain(chi, eta);

    OptimizationResult result;
    std::int64_t evals = 0;
    const auto objective = [&](double lambda) {
        ++evals;
        const ModelParams p{chi, eta, lambda, Complex{}};
        return log_negativity(closed_form_covariance(p, cfg.stability_margin));
    };

    result.l_nofb = objective(0.0);
    if (eta == 0.0) {
        result.lambda_star = 0.0;
        result.l_fb = result.l_nofb;
        result.valid_interval = LambdaInterval{0.0, 0.0};
        result.evaluations = evals;
        return result;
    }

    const LambdaInterval window = valid_lambda_interval(chi, eta, cfg.stability_margin);
    result.valid_interval = window;

    const int grid = std::max(3, cfg.grid_points);
    const double span = window.hi - window.lo;
    double best_lambda = 0.0;
    double best_value = result.l_nofb;
    for (int i = 0; i < grid; ++i) {
        const double lambda = window.lo + span * static_cast<double>(i) / (grid - 1);
        const double value = objective(lambda);
        if (value > best_value) {
            best_value = value;
            best_lambda = lambda;
        }
    }

    // Golden-section refinement of the best grid bracket; window edges stay
    // candidates since the maximum often sits on the physicality boundary.
    const double step = span / (grid - 1);
    double a = std::max(window.lo, best_lambda - step);
    double b = std::min(window.hi, best_lambda + step);
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > cfg.refine_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = objective(d);
        }
    }
    for (const double cand : {a, c, d, b}) {
        const double value = objective(cand);
        if (value > best_value) {
            best_value = value;
            best_lambda = cand;
        }
    }

    // The window scan has finite resolution; if the maximizer landed inside a
    // skipped unphysical sliver, walk it back toward 0.
    if (best_lambda != 0.0 &&
        !is_physical(closed_form_covariance(ModelParams{chi, eta, best_lambda, Complex{}},
                                            cfg.stability_margin),
                     kPhysTol)) {
        double bad = best_lambda;
        double good = 0.0;
        while (std::abs(bad - good) > kBisectTol) {
            const double mid = 0.5 * (good + bad);
            (admissible(chi, eta, mid, cfg.stability_margin) ? good : bad) = mid;
        }
        best_lambda = good;
        best_value = objective(best_lambda);
    }

    if (best_value <= result.l_nofb + 1e-12) {
        // No measurable gain; report the feedback-free point.
        result.lambda_star = 0.0;
        result.l_fb = result.l_nofb;
    } else {
        result.lambda_star = best_lambda;
        result.l_fb = best_value;
    }
    result.evaluations = evals;
    return result;
}

}  // namespace entfb
