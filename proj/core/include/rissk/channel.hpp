#pragma once

#include <complex>
#include <vector>

#include "rissk/rng.hpp"

namespace rissk {

// Nakagami-m fading with optional in-phase / quadrature power imbalance p.
// p = 0 is the balanced (and default) case; |p| < 1 keeps both component
// Gamma shapes positive.
struct NakagamiParams {
    double m = 1.0;
    double omega = 1.0;
    double p = 0.0;
};

void validate(const NakagamiParams& params);

// E[beta] and Var[beta] of the fading magnitude beta = |h|.
double beta_mean(const NakagamiParams& params);
double beta_variance(const NakagamiParams& params);

// n x n_r complex gains, element index u major.
class ChannelMatrix {
public:
    ChannelMatrix(int n, int n_r);

    int n() const noexcept { return n_; }
    int n_r() const noexcept { return n_r_; }

    std::complex<double>& at(int u, int w) noexcept { return h_[static_cast<std::size_t>(u) * n_r_ + w]; }
    const std::complex<double>& at(int u, int w) const noexcept {
        return h_[static_cast<std::size_t>(u) * n_r_ + w];
    }

private:
    int n_, n_r_;
    std::vector<std::complex<double>> h_;
};

// Precomputed samplers for one NakagamiParams; h = X + jY with X^2, Y^2
// Gamma distributed (shapes (1 +- p) m / 2, scale omega / m) and independent
// random signs.  Draw order per entry is fixed: X gamma, X sign, Y gamma,
// Y sign.
class ChannelSampler {
public:
    explicit ChannelSampler(const NakagamiParams& params);

    std::complex<double> draw(Philox& rng) const noexcept {
        const double x2 = gamma_x_(rng);
        const double sx = (rng.next_u32() & 1u) ? 1.0 : -1.0;
        const double y2 = gamma_y_(rng);
        const double sy = (rng.next_u32() & 1u) ? 1.0 : -1.0;
        return {sx * std::sqrt(x2), sy * std::sqrt(y2)};
    }

    void fill(ChannelMatrix& h, Philox& rng) const noexcept;

private:
    GammaSampler gamma_x_, gamma_y_;
};

ChannelMatrix sample_channel(const NakagamiParams& params, int n, int n_r, Philox& rng);

}  // namespace rissk
