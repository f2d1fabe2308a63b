#include "rissk/numerics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace rissk {

namespace {

constexpr int kMaxRow = 64;

constexpr std::array<std::array<std::uint64_t, kMaxRow + 1>, kMaxRow + 1> make_pascal() {
    std::array<std::array<std::uint64_t, kMaxRow + 1>, kMaxRow + 1> t{};
    for (int l = 0; l <= kMaxRow; ++l) {
        t[l][0] = 1;
        t[l][l] = 1;
        for (int r = 1; r < l; ++r) t[l][r] = t[l - 1][r - 1] + t[l - 1][r];
    }
    return t;
}

constexpr auto kPascal = make_pascal();

}  // namespace

double gamma_ratio(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::domain_error("gamma_ratio: m must be finite and > 0");
    return std::exp(std::lgamma(m + 0.5) - std::lgamma(m));
}

std::uint64_t binomial(int l, int r) {
    if (l < 0 || r < 0 || r > l) throw std::domain_error("binomial: need 0 <= r <= l");
    if (l > kMaxRow) throw std::overflow_error("binomial: l > 64 not exactly representable");
    return kPascal[static_cast<std::size_t>(l)][static_cast<std::size_t>(r)];
}

double alternating_binomial_sum(std::span<const double> terms) {
    long double sum = 0.0L;
    long double comp = 0.0L;
    for (double term : terms) {
        const long double t = term;
        const long double s = sum + t;
        if (std::fabs(sum) >= std::fabs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
    }
    return static_cast<double>(sum + comp);
}

}  // namespace rissk
