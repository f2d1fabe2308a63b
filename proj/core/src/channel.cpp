#include "rissk/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "rissk/numerics.hpp"

namespace rissk {

void validate(const NakagamiParams& params) {
    if (!(params.m > 0.0) || !std::isfinite(params.m))
        throw std::domain_error("NakagamiParams: m must be finite and > 0");
    if (!(params.omega > 0.0) || !std::isfinite(params.omega))
        throw std::domain_error("NakagamiParams: omega must be finite and > 0");
    if (!(std::fabs(params.p) < 1.0))
        throw std::domain_error("NakagamiParams: need |p| < 1 so both component shapes are positive");
}

double beta_mean(const NakagamiParams& params) {
    validate(params);
    return std::sqrt(params.omega / params.m) * gamma_ratio(params.m);
}

double beta_variance(const NakagamiParams& params) {
    validate(params);
    const double g = gamma_ratio(params.m);
    return params.omega * (1.0 - g * g / params.m);
}

ChannelMatrix::ChannelMatrix(int n, int n_r) : n_(n), n_r_(n_r) {
    if (n < 1 || n_r < 1) throw std::domain_error("ChannelMatrix: dimensions must be positive");
    h_.resize(static_cast<std::size_t>(n) * n_r);
}

ChannelSampler::ChannelSampler(const NakagamiParams& params)
    : gamma_x_((1.0 + params.p) * params.m / 2.0, params.omega / params.m),
      gamma_y_((1.0 - params.p) * params.m / 2.0, params.omega / params.m) {
    validate(params);
}

void ChannelSampler::fill(ChannelMatrix& h, Philox& rng) const noexcept {
    for (int u = 0; u < h.n(); ++u)
        for (int w = 0; w < h.n_r(); ++w) h.at(u, w) = draw(rng);
}

ChannelMatrix sample_channel(const NakagamiParams& params, int n, int n_r, Philox& rng) {
    ChannelMatrix h(n, n_r);
    ChannelSampler(params).fill(h, rng);
    return h;
}

}  // namespace rissk
