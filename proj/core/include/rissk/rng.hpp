#pragma once

#include <cmath>
#include <cstdint>

namespace rissk {

// Philox-4x32-10 counter-based generator (Salmon et al., SC'11).
// Streams are addressed by (seed, stream): the 64-bit seed is the key and
// the 64-bit stream id occupies the upper counter words, so any two streams
// are independent and a stream's output depends only on (seed, stream),
// never on how many other streams exist or which thread runs it.
class Philox {
public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0) noexcept {
        key_[0] = static_cast<std::uint32_t>(seed);
        key_[1] = static_cast<std::uint32_t>(seed >> 32);
        ctr_[0] = 0;
        ctr_[1] = 0;
        ctr_[2] = static_cast<std::uint32_t>(stream);
        ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
    }

    std::uint32_t next_u32() noexcept {
        if (avail_ == 0) refill();
        return buf_[4 - avail_--];
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on the open interval (0, 1); never returns 0 or 1, so it is
    // safe under log().
    double uniform() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Standard normal via the Marsaglia polar method; the spare deviate is
    // cached, so draw parity is part of the stream state.
    double normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    double exponential(double mean) noexcept { return -mean * std::log(uniform()); }

    // One raw 128-bit block; exposed for known-answer tests.
    void block(const std::uint32_t ctr[4], const std::uint32_t key[2], std::uint32_t out[4]) const noexcept {
        std::uint32_t x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];
        std::uint32_t k0 = key[0], k1 = key[1];
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += 0x9E3779B9u;
                k1 += 0xBB67AE85u;
            }
            const std::uint64_t p0 = 0xD2511F53ull * x0;
            const std::uint64_t p1 = 0xCD9E8D57ull * x2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            const std::uint32_t nx2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            x2 = nx2;
        }
        out[0] = x0;
        out[1] = x1;
        out[2] = x2;
        out[3] = x3;
    }

private:
    void refill() noexcept {
        block(ctr_, key_, buf_);
        if (++ctr_[0] == 0) ++ctr_[1];  // 64-bit block counter inside the stream
        avail_ = 4;
    }

    std::uint32_t key_[2];
    std::uint32_t ctr_[4];
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    int avail_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Marsaglia-Tsang gamma sampler with per-shape constants precomputed, since
// the simulators draw millions of variates at a fixed shape.  Shapes below 1
// use the standard boost G(alpha) = G(alpha+1) * U^(1/alpha).
class GammaSampler {
public:
    GammaSampler(double shape, double scale) noexcept : shape_(shape), scale_(scale) {
        const double d_shape = shape < 1.0 ? shape + 1.0 : shape;
        d_ = d_shape - 1.0 / 3.0;
        c_ = 1.0 / std::sqrt(9.0 * d_);
        inv_shape_ = shape < 1.0 ? 1.0 / shape : 0.0;
    }

    double shape() const noexcept { return shape_; }
    double scale() const noexcept { return scale_; }

    double operator()(Philox& rng) const noexcept {
        double result;
        for (;;) {
            double x, v;
            do {
                x = rng.normal();
                v = 1.0 + c_ * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = rng.uniform();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) {
                result = d_ * v;
                break;
            }
            if (std::log(u) < 0.5 * x2 + d_ * (1.0 - v + std::log(v))) {
                result = d_ * v;
                break;
            }
        }
        if (inv_shape_ != 0.0) result *= std::pow(rng.uniform(), inv_shape_);
        return result * scale_;
    }

private:
    double shape_, scale_, d_, c_, inv_shape_;
};

// SplitMix64 step; used to derive per-row seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace rissk
