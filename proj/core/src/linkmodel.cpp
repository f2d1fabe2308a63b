#include "rissk/linkmodel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rissk {

namespace {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

void validate(const SystemConfig& cfg) {
    if (cfg.n < 1) throw std::domain_error("SystemConfig: n must be >= 1");
    if (cfg.n_r < 2) throw std::domain_error("SystemConfig: n_r must be >= 2");
    if (!(cfg.es >= 0.0) || !std::isfinite(cfg.es)) throw std::domain_error("SystemConfig: es must be >= 0");
    if (!(cfg.n0 > 0.0) || !std::isfinite(cfg.n0)) throw std::domain_error("SystemConfig: n0 must be > 0");
    if (!(cfg.k >= 0.0 && cfg.k <= 1.0)) throw std::domain_error("SystemConfig: k must lie in [0, 1]");
    if (cfg.scheme == Scheme::rpm && (cfg.m_order < 2 || !is_power_of_two(cfg.m_order)))
        throw std::domain_error("SystemConfig: RPM order M must be a power of two >= 2");
    validate(cfg.channel);
}

RpmSymbol rpm_symbol(int index, int m_order) {
    if (m_order < 2 || !is_power_of_two(m_order))
        throw std::domain_error("rpm_symbol: M must be a power of two >= 2");
    if (index < 1 || index > m_order) throw std::domain_error("rpm_symbol: index must lie in 1..M");
    return {index, 2.0 * std::numbers::pi * (index - 1) / m_order};
}

std::vector<RpmSymbol> rpm_constellation(int m_order) {
    std::vector<RpmSymbol> set;
    set.reserve(static_cast<std::size_t>(m_order));
    for (int n = 1; n <= m_order; ++n) set.push_back(rpm_symbol(n, m_order));
    return set;
}

double aggregate_k(double k_t, double k_r) {
    if (!(k_t >= 0.0) || !(k_r >= 0.0)) throw std::domain_error("aggregate_k: levels must be >= 0");
    const double k = std::sqrt(k_t * k_t + k_r * k_r);
    if (k > 1.0) throw std::domain_error("aggregate_k: combined level exceeds 1");
    return k;
}

void received_energies(const ChannelMatrix& h, int target, const SystemConfig& cfg,
                       std::optional<RpmSymbol> symbol, Philox& rng, LinkWorkspace& ws) {
    if (target < 0 || target >= h.n_r()) throw std::domain_error("received_energies: target out of range");
    if (cfg.scheme == Scheme::rpm && !symbol)
        throw std::domain_error("received_energies: RPM needs a symbol");

    const int n = h.n();
    const int n_r = h.n_r();
    ws.phases.resize(static_cast<std::size_t>(n));
    ws.energies.resize(static_cast<std::size_t>(n_r));

    // RIS phase u is set to theta_{u,target}; e^{j theta} = conj(h) / |h|.
    double aligned = 0.0;
    for (int u = 0; u < n; ++u) {
        const std::complex<double> huw = h.at(u, target);
        const double beta = std::abs(huw);
        aligned += beta;
        ws.phases[static_cast<std::size_t>(u)] = beta > 0.0 ? std::conj(huw) / beta : std::complex<double>(1.0, 0.0);
    }

    // One distortion draw per realization, shared by every branch.
    std::complex<double> amp(std::sqrt(cfg.es), 0.0);
    if (cfg.k > 0.0) {
        const double sigma_q = cfg.k * std::sqrt(cfg.es / 2.0);
        const double q_re = sigma_q * rng.normal();
        const double q_im = sigma_q * rng.normal();
        amp += std::complex<double>(q_re, q_im);
    }
    if (symbol) amp *= std::polar(1.0, symbol->phase);

    const double sigma_n = std::sqrt(cfg.n0 / 2.0);
    for (int p = 0; p < n_r; ++p) {
        std::complex<double> s;
        if (p == target) {
            s = {aligned, 0.0};
        } else {
            for (int u = 0; u < n; ++u) s += ws.phases[static_cast<std::size_t>(u)] * h.at(u, p);
        }
        const std::complex<double> noise(sigma_n * rng.normal(), sigma_n * rng.normal());
        ws.energies[static_cast<std::size_t>(p)] = std::norm(amp * s + noise);
    }
}

std::vector<double> received_energies(const ChannelMatrix& h, int target, const SystemConfig& cfg,
                                      std::optional<RpmSymbol> symbol, Philox& rng) {
    LinkWorkspace ws;
    received_energies(h, target, cfg, symbol, rng, ws);
    return ws.energies;
}

int greedy_detect(const std::vector<double>& energies) {
    if (energies.empty()) throw std::domain_error("greedy_detect: no branches");
    int best = 0;
    for (int p = 1; p < static_cast<int>(energies.size()); ++p)
        if (energies[static_cast<std::size_t>(p)] > energies[static_cast<std::size_t>(best)]) best = p;
    return best;
}

}  // namespace rissk
