#include "entfb/rng.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace entfb {

namespace {

double gauss_pdf(double x) { return std::exp(-0.5 * x * x); }

double gauss_tail(double r) {
    return std::sqrt(std::acos(-1.0) / 2.0) * std::erfc(r / std::sqrt(2.0));
}

constexpr int kStrips = 256;

// Builds the strip edges for a candidate base coordinate r and reports the
// closure defect at the distribution's peak: every strip holds the same
// area v, and a correctly sized r makes the innermost edge land on f = 1.
// Positive defect: r too small (probability runs out early); negative: too
// large.
double closure_defect(double r, std::array<double, kStrips>& x, double& v_out) {
    const double v = r * gauss_pdf(r) + gauss_tail(r);
    v_out = v;
    x[kStrips - 1] = r;
    for (int i = kStrips - 2; i >= 1; --i) {
        const double y = v / x[i + 1] + gauss_pdf(x[i + 1]);
        if (y >= 1.0) return 1.0;
        x[i] = std::sqrt(-2.0 * std::log(y));
    }
    x[0] = 0.0;
    return v / x[1] + gauss_pdf(x[1]) - 1.0;
}

double uniform_open(Xoshiro256pp& rng) {
    // strictly inside (0, 1); safe under log()
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

ZigguratNormal::ZigguratNormal() {
    std::array<double, kStrips> x{};
    double v = 0.0;
    double lo = 3.0, hi = 4.5;
    if (!(closure_defect(lo, x, v) > 0.0) || !(closure_defect(hi, x, v) < 0.0)) {
        throw std::logic_error("ziggurat bracket does not straddle the closure root");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (closure_defect(mid, x, v) > 0.0 ? lo : hi) = mid;
    }
    const double r = 0.5 * (lo + hi);
    closure_defect(r, x, v);
    x[0] = 0.0;

    const double scale = 0x1.0p52;
    tail_start_ = r;
    const double base_width = v / gauss_pdf(r);
    width_[0] = base_width / scale;
    threshold_[0] = static_cast<std::uint64_t>(r / base_width * scale);
    height_[0] = 1.0;
    for (int i = 1; i < kStrips; ++i) {
        width_[i] = x[i] / scale;
        threshold_[i] = static_cast<std::uint64_t>(x[i - 1] / x[i] * scale);
        height_[i] = gauss_pdf(x[i]);
    }
}

double ZigguratNormal::sample_edge(Xoshiro256pp& rng, unsigned idx, double x) const {
    if (idx == 0) {
        // Marsaglia tail sampler beyond tail_start_.
        double xt, yt;
        do {
            xt = -std::log(uniform_open(rng)) / tail_start_;
            yt = -std::log(uniform_open(rng));
        } while (yt + yt < xt * xt);
        return tail_start_ + xt;
    }
    const double bottom = height_[idx];
    const double top = height_[idx - 1];
    const double y = bottom + rng.uniform() * (top - bottom);
    return (y < gauss_pdf(x)) ? x : kReject;
}

const ZigguratNormal& ZigguratNormal::instance() {
    static const ZigguratNormal z;
    return z;
}

}  // namespace entfb
