#pragma once

#include <cstdint>

namespace entfb {

/// splitmix64; used to expand seeds into full generator states.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ bit generator. Small state, fast, and fully portable, so
/// seeded runs are bit-identical across standard libraries and platforms.
class Xoshiro256pp {
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    /// Independent per-stream construction: stream i of a master seed.
    Xoshiro256pp(std::uint64_t master_seed, std::uint64_t stream) {
        SplitMix64 sm(master_seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
        for (auto& word : s_) word = sm.next();
    }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

/// Standard normal sampler, 256-strip ziggurat. Tables are built once at
/// startup from the closure condition, not transcribed constants.
class ZigguratNormal {
  public:
    double operator()(Xoshiro256pp& rng) const {
        for (;;) {
            const std::uint64_t bits = rng();
            const unsigned idx = static_cast<unsigned>(bits & 0xFFu);
            const std::uint64_t sign = (bits >> 8) & 0x1u;
            const std::uint64_t mant = bits >> 12;  // 52 uniform bits
            const double x = static_cast<double>(mant) * width_[idx];
            if (mant < threshold_[idx]) return sign ? -x : x;
            const double y = sample_edge(rng, idx, x);
            if (y != kReject) return sign ? -y : y;
        }
    }

    static const ZigguratNormal& instance();

  private:
    ZigguratNormal();

    double sample_edge(Xoshiro256pp& rng, unsigned idx, double x) const;

    static constexpr double kReject = -1.0;

    std::uint64_t threshold_[256];
    double width_[256];   // strip width / 2^52
    double height_[256];  // density at the strip's inner edge
    double tail_start_ = 0.0;
};

}  // namespace entfb
