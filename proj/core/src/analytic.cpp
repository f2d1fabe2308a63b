#include "rissk/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rissk/numerics.hpp"

namespace rissk {

namespace {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

// E[exp{s U^2}] for U ~ N(mu, var) splits into an exponent contribution and
// a denominator factor; the callers combine several components under one
// exp() / sqrt() to keep tiny tail values at full relative precision.
struct MgfComponent {
    double exponent;
    double denom;
};

MgfComponent gaussian_square_component(double mu, double var, double s) {
    const double d = 1.0 - 2.0 * s * var;
    return {s * mu * mu / d, d};
}

double check_s(double s) {
    if (!(s <= 0.0) || !std::isfinite(s))
        throw std::domain_error("cf_quadratic_form: s must be finite and <= 0");
    return s;
}

int pairwise_count(const SystemConfig& cfg) {
    const int l = cfg.n_r - 1;
    if (l > 64) throw std::overflow_error("ped: N_R - 1 > 64 exceeds the exact binomial range");
    return l;
}

// sum over r of (-1)^(r-1) C(L,r) term(r), ascending r, compensated.
template <typename TermFn>
double alternating_sum(int l, TermFn&& term) {
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(l));
    double sign = 1.0;
    for (int r = 1; r <= l; ++r) {
        terms.push_back(sign * static_cast<double>(binomial(l, r)) * term(r));
        sign = -sign;
    }
    return alternating_binomial_sum(terms);
}

}  // namespace

SskMoments ssk_moments(const SystemConfig& cfg) {
    validate(cfg);
    const double m = cfg.channel.m;
    const double omega = cfg.channel.omega;
    const double g = gamma_ratio(m);
    const double g2m = g * g / m;
    const double n = static_cast<double>(cfg.n);
    const double k2 = cfg.k * cfg.k;
    const double neso = n * cfg.es * omega;
    SskMoments mom;
    mom.mu1 = n * g * std::sqrt(cfg.es * omega / m);
    mom.a = neso + k2 * neso + cfg.n0;
    mom.b_sk = neso * (1.0 - g2m);
    mom.c_sk = 0.5 * k2 * neso * (1.0 + g2m) + 0.5 * cfg.n0;
    return mom;
}

RpmMoments rpm_moments(const SystemConfig& cfg, double psi) {
    if (!std::isfinite(psi)) throw std::domain_error("rpm_moments: psi must be finite");
    const SskMoments sk = ssk_moments(cfg);
    const double sp = std::sin(psi);
    const double cp = std::cos(psi);
    RpmMoments mom;
    mom.mu_h1 = sk.mu1 * sp;
    mom.mu_h2 = sk.mu1 * cp;
    mom.a = sk.a;
    mom.b_rp = sk.b_sk * sp * sp;
    mom.d_rp = sk.b_sk * cp * cp;
    mom.c_rp = sk.c_sk;
    mom.psi = psi;
    return mom;
}

double cf_quadratic_form(const SskMoments& mom, double s) {
    check_s(s);
    const auto u = gaussian_square_component(mom.mu1, mom.b_sk + mom.c_sk, s);
    const auto v = gaussian_square_component(0.0, mom.c_sk, s);
    return std::exp(u.exponent + v.exponent) / std::sqrt(u.denom * v.denom);
}

double cf_quadratic_form(const RpmMoments& mom, double s) {
    check_s(s);
    const auto u = gaussian_square_component(mom.mu_h1, mom.b_rp + mom.c_rp, s);
    const auto v = gaussian_square_component(mom.mu_h2, mom.d_rp + mom.c_rp, s);
    return std::exp(u.exponent + v.exponent) / std::sqrt(u.denom * v.denom);
}

PedResult pped_ssk(const SystemConfig& cfg) {
    const SskMoments mom = ssk_moments(cfg);
    return {cf_quadratic_form(mom, -1.0 / mom.a), cfg, std::nullopt};
}

PedResult ped_ssk(const SystemConfig& cfg) {
    const SskMoments mom = ssk_moments(cfg);
    const int l = pairwise_count(cfg);
    const double value =
        alternating_sum(l, [&](int r) { return cf_quadratic_form(mom, -static_cast<double>(r) / mom.a); });
    return {value, cfg, std::nullopt};
}

PedResult ped_ssk_high_snr(const SystemConfig& cfg) {
    validate(cfg);
    const int l = pairwise_count(cfg);
    const double g = gamma_ratio(cfg.channel.m);
    const double g2m = g * g / cfg.channel.m;
    const double k2 = cfg.k * cfg.k;
    const double n = static_cast<double>(cfg.n);
    const double value = (1.0 + k2) * alternating_sum(l, [&](int ri) {
                             const double r = ri;
                             const double d1 = 1.0 + k2 * (1.0 + r * (1.0 + g2m));
                             const double d2 = d1 + 2.0 * r * (1.0 - g2m);
                             return std::exp(-r * n * g2m / d2) / std::sqrt(d2 * d1);
                         });
    return {value, cfg, std::nullopt};
}

PedResult ped_ssk_low_snr(const SystemConfig& cfg) {
    validate(cfg);
    const int l = pairwise_count(cfg);
    const double g = gamma_ratio(cfg.channel.m);
    const double g2m = g * g / cfg.channel.m;
    const double n = static_cast<double>(cfg.n);
    const double n2gamma = n * n * cfg.gamma_av();
    const double value = alternating_sum(l, [&](int ri) {
        const double r = ri;
        return std::exp(-r * n2gamma * g2m / (r + 1.0)) / (r + 1.0);
    });
    return {value, cfg, std::nullopt};
}

double ped_zero_snr(int n_branches) {
    if (n_branches < 2) throw std::domain_error("ped_zero_snr: need n_branches >= 2");
    const double l = n_branches - 1;
    return l / (l + 1.0);
}

PedResult pped_rpm_conditional(const SystemConfig& cfg, double psi) {
    const RpmMoments mom = rpm_moments(cfg, psi);
    return {cf_quadratic_form(mom, -1.0 / mom.a), cfg, psi};
}

PedResult ped_rpm_conditional(const SystemConfig& cfg, double psi) {
    validate(cfg);
    if (cfg.scheme != Scheme::rpm)
        throw std::domain_error("ped_rpm_conditional: configuration is not RPM");
    const int l = pairwise_count(cfg);
    const RpmMoments mom = rpm_moments(cfg, psi);
    const double value =
        alternating_sum(l, [&](int r) { return cf_quadratic_form(mom, -static_cast<double>(r) / mom.a); });
    return {value, cfg, psi};
}

PedResult ped_rpm(const SystemConfig& cfg) {
    validate(cfg);
    if (cfg.scheme != Scheme::rpm) throw std::domain_error("ped_rpm: configuration is not RPM");
    double sum = 0.0;
    for (const RpmSymbol& sym : rpm_constellation(cfg.m_order))
        sum += ped_rpm_conditional(cfg, sym.phase).value;
    return {sum / cfg.m_order, cfg, std::nullopt};
}

PedResult ped_rpm_high_snr(const SystemConfig& cfg) {
    validate(cfg);
    if (cfg.scheme != Scheme::rpm) throw std::domain_error("ped_rpm_high_snr: configuration is not RPM");
    const int l = pairwise_count(cfg);
    const double g = gamma_ratio(cfg.channel.m);
    const double g2m = g * g / cfg.channel.m;
    const double k2 = cfg.k * cfg.k;
    const double n = static_cast<double>(cfg.n);
    double sum = 0.0;
    for (const RpmSymbol& sym : rpm_constellation(cfg.m_order)) {
        const double s2 = std::sin(sym.phase) * std::sin(sym.phase);
        const double c2 = std::cos(sym.phase) * std::cos(sym.phase);
        sum += alternating_sum(l, [&](int ri) {
            const double r = ri;
            const double kterm = k2 * (1.0 + r * (1.0 + g2m));
            const double ds = 1.0 + 2.0 * r * s2 * (1.0 - g2m) + kterm;
            const double dc = 1.0 + 2.0 * r * c2 * (1.0 - g2m) + kterm;
            return std::exp(-r * n * g2m * (s2 / ds + c2 / dc)) / std::sqrt(ds * dc);
        });
    }
    return {(1.0 + k2) * sum / cfg.m_order, cfg, std::nullopt};
}

PedResult ped_rpm_low_snr(const SystemConfig& cfg) {
    validate(cfg);
    if (cfg.scheme != Scheme::rpm) throw std::domain_error("ped_rpm_low_snr: configuration is not RPM");
    const int l = pairwise_count(cfg);
    const double g = gamma_ratio(cfg.channel.m);
    const double g2m = g * g / cfg.channel.m;
    const double n = static_cast<double>(cfg.n);
    const double n2gamma = n * n * cfg.gamma_av();
    double sum = 0.0;
    for (const RpmSymbol& sym : rpm_constellation(cfg.m_order)) {
        const double s2 = std::sin(sym.phase) * std::sin(sym.phase);
        const double c2 = std::cos(sym.phase) * std::cos(sym.phase);
        sum += alternating_sum(l, [&](int ri) {
            const double r = ri;
            return std::exp(-r * n2gamma * g2m * s2 / (r + 1.0)) *
                   std::exp(-r * n2gamma * g2m * c2 / (r + 1.0)) / (r + 1.0);
        });
    }
    return {sum / cfg.m_order, cfg, std::nullopt};
}

BerBound ber_union_bound(double ped, int n_branches) {
    if (!(ped >= 0.0 && ped <= 1.0)) throw std::domain_error("ber_union_bound: ped must lie in [0, 1]");
    if (n_branches < 2 || !is_power_of_two(n_branches))
        throw std::domain_error("ber_union_bound: n_branches must be a power of two >= 2");
    BerBound b;
    b.value = 0.5 * n_branches * ped;
    b.vacuous = b.value > 0.5;
    return b;
}

}  // namespace rissk
