#include "rissk/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rissk {

namespace {

// Acklam's rational approximation to the standard normal quantile; |error|
// below 1.2e-9, plenty for confidence intervals.
double norm_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                               1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                               6.680131188771972e+01,  -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                               -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                               3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) return -norm_quantile(1.0 - p);
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

void validate(const McConfig& mc) {
    if (mc.trials < 1) throw std::domain_error("McConfig: trials must be >= 1");
    if (mc.chunk_size < 1) throw std::domain_error("McConfig: chunk_size must be >= 1");
    if (!(mc.confidence_level > 0.0 && mc.confidence_level < 1.0))
        throw std::domain_error("McConfig: confidence_level must lie in (0, 1)");
}

// Runs `chunk_errors(chunk_index, trials_in_chunk)` over the fixed chunk
// partition and reduces the integer counts in chunk order.
McEstimate run_chunks(const McConfig& mc,
                      const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& chunk_errors) {
    const std::uint64_t n_chunks = (mc.trials + mc.chunk_size - 1) / mc.chunk_size;
    std::vector<std::uint64_t> errors(n_chunks, 0);

    unsigned workers = mc.workers != 0 ? mc.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= n_chunks) return;
            const std::uint64_t begin = i * mc.chunk_size;
            const std::uint64_t count = std::min(mc.chunk_size, mc.trials - begin);
            errors[i] = chunk_errors(i, count);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::uint64_t total = 0;
    for (std::uint64_t e : errors) total += e;

    McEstimate est;
    est.trials = mc.trials;
    est.errors = total;
    est.mode = mc.mode;
    est.p_hat = static_cast<double>(total) / static_cast<double>(mc.trials);
    est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(mc.trials));
    const double z = norm_quantile(0.5 * (1.0 + mc.confidence_level));
    est.ci_low = std::max(0.0, est.p_hat - z * est.std_err);
    est.ci_high = std::min(1.0, est.p_hat + z * est.std_err);
    return est;
}

}  // namespace

McEstimate estimate_ped_exact(const SystemConfig& cfg, const McConfig& mc, std::optional<RpmSymbol> pinned) {
    validate(cfg);
    validate(mc);
    if (pinned && cfg.scheme != Scheme::rpm)
        throw std::domain_error("estimate_ped_exact: pinned symbol needs an RPM configuration");
    if (pinned) rpm_symbol(pinned->index, cfg.m_order);  // range check

    const ChannelSampler sampler(cfg.channel);
    const bool rpm = cfg.scheme == Scheme::rpm;
    constexpr int target = 0;

    auto chunk = [&, pinned](std::uint64_t index, std::uint64_t count) -> std::uint64_t {
        Philox rng(mc.seed, index);
        ChannelMatrix h(cfg.n, cfg.n_r);
        LinkWorkspace ws;
        std::uint64_t bad = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            sampler.fill(h, rng);
            std::optional<RpmSymbol> sym;
            if (rpm) {
                sym = pinned ? *pinned
                             : rpm_symbol(1 + static_cast<int>(rng.next_u64() % cfg.m_order), cfg.m_order);
            }
            received_energies(h, target, cfg, sym, rng, ws);
            if (greedy_detect(ws.energies) != target) ++bad;
        }
        return bad;
    };
    return run_chunks(mc, chunk);
}

McEstimate estimate_ped_surrogate(const SystemConfig& cfg, const McConfig& mc, std::optional<double> psi) {
    validate(cfg);
    validate(mc);
    if (psi && cfg.scheme != Scheme::rpm)
        throw std::domain_error("estimate_ped_surrogate: pinned psi needs an RPM configuration");

    struct Component {
        double mu_u, sd_u, mu_v, sd_v;
    };
    std::vector<Component> comps;
    double a = 0.0;
    if (cfg.scheme == Scheme::ssk) {
        const SskMoments mom = ssk_moments(cfg);
        a = mom.a;
        comps.push_back({mom.mu1, std::sqrt(mom.b_sk + mom.c_sk), 0.0, std::sqrt(mom.c_sk)});
    } else if (psi) {
        const RpmMoments mom = rpm_moments(cfg, *psi);
        a = mom.a;
        comps.push_back({mom.mu_h1, std::sqrt(mom.b_rp + mom.c_rp), mom.mu_h2, std::sqrt(mom.d_rp + mom.c_rp)});
    } else {
        for (const RpmSymbol& sym : rpm_constellation(cfg.m_order)) {
            const RpmMoments mom = rpm_moments(cfg, sym.phase);
            a = mom.a;
            comps.push_back(
                {mom.mu_h1, std::sqrt(mom.b_rp + mom.c_rp), mom.mu_h2, std::sqrt(mom.d_rp + mom.c_rp)});
        }
    }
    const int l = cfg.n_r - 1;

    auto chunk = [&, comps, a, l](std::uint64_t index, std::uint64_t count) -> std::uint64_t {
        Philox rng(mc.seed, index);
        std::uint64_t bad = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            const Component& comp =
                comps.size() == 1 ? comps[0] : comps[rng.next_u64() % comps.size()];
            const double u = comp.mu_u + comp.sd_u * rng.normal();
            const double v = comp.mu_v + comp.sd_v * rng.normal();
            const double x = u * u + v * v;
            double y_max = 0.0;
            for (int i = 0; i < l; ++i) y_max = std::max(y_max, rng.exponential(a));
            if (x < y_max) ++bad;
        }
        return bad;
    };
    return run_chunks(mc, chunk);
}

}  // namespace rissk
