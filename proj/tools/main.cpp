#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rissk/analytic.hpp"
#include "rissk/linkmodel.hpp"
#include "rissk/montecarlo.hpp"
#include "rissk/sweep.hpp"
#include "rissk/validate.hpp"

namespace {

struct PointArgs {
    std::string scheme = "ssk";
    int n = 32;
    int nr = 2;
    double m = 1.0;
    double omega = 1.0;
    double p = 0.0;
    double k = 0.0;
    double kt = 0.0;
    double kr = 0.0;
    int m_order = 4;
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::string mode = "exact";
    std::uint64_t seed = 1;
    unsigned workers = 0;
    int rpm_symbol = 0;  // 0: unconditioned
    double confidence = 0.99;
};

struct SweepArgs {
    std::string config;
    std::string output;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string mode;
    unsigned workers = 0;
};

struct ValidateArgs {
    bool quick = false;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

rissk::SystemConfig build_cfg(const PointArgs& a, bool use_split_k) {
    rissk::SystemConfig cfg;
    cfg.scheme = a.scheme == "rpm" ? rissk::Scheme::rpm : rissk::Scheme::ssk;
    cfg.n = a.n;
    cfg.n_r = a.nr;
    cfg.channel.m = a.m;
    cfg.channel.omega = a.omega;
    cfg.channel.p = a.p;
    cfg.k = use_split_k ? rissk::aggregate_k(a.kt, a.kr) : a.k;
    cfg.m_order = a.m_order;
    cfg.n0 = 1.0;
    cfg.es = std::pow(10.0, a.snr_db / 10.0) / a.omega;
    return cfg;
}

int cmd_point(const PointArgs& a, bool use_split_k) {
    rissk::PointRequest req;
    req.cfg = build_cfg(a, use_split_k);
    req.gamma_db = a.snr_db;
    req.trials = a.trials;
    req.mode = a.mode == "surrogate" ? rissk::McMode::surrogate : rissk::McMode::exact;
    req.seed = a.seed;
    req.workers = a.workers;

    std::optional<rissk::RpmSymbol> pinned;
    if (a.rpm_symbol > 0) {
        if (req.cfg.scheme != rissk::Scheme::rpm)
            throw CLI::ValidationError("--rpm-symbol", "only meaningful with --scheme rpm");
        pinned = rissk::rpm_symbol(a.rpm_symbol, req.cfg.m_order);
    }

    rissk::PointRecord rec = rissk::evaluate_point(
        pinned && a.trials > 0 ? [&] {
            // Pinned symbol: run the Monte Carlo part conditioned on it, keep
            // the analytic columns unconditioned.
            rissk::PointRequest analytic_only = req;
            analytic_only.trials = 0;
            return analytic_only;
        }() : req);
    if (pinned && a.trials > 0) {
        rissk::McConfig mc;
        mc.trials = a.trials;
        mc.seed = a.seed;
        mc.mode = req.mode;
        mc.workers = a.workers;
        mc.confidence_level = a.confidence;
        rec.mc = req.mode == rissk::McMode::exact
                     ? rissk::estimate_ped_exact(req.cfg, mc, pinned)
                     : rissk::estimate_ped_surrogate(req.cfg, mc, pinned->phase);
    }

    std::printf("%s\n%s\n", rissk::csv_header().c_str(), rissk::csv_row(rec).c_str());

    std::fprintf(stderr, "# gamma_av = %.10g dB, scheme %s, N = %d, N_R = %d\n", a.snr_db,
                 a.scheme.c_str(), a.n, a.nr);
    std::fprintf(stderr, "# ped_analytic  %.9e   (high %.9e, low %.9e, zero %.9e)\n",
                 rec.ped_analytic, rec.ped_high_snr, rec.ped_low_snr, rec.ped_zero_snr);
    if (rec.ber)
        std::fprintf(stderr, "# ber_bound     %.9e%s\n", rec.ber->value,
                     rec.ber->vacuous ? "   (vacuous: above 1/2)" : "");
    if (pinned) {
        const double cond = rissk::ped_rpm_conditional(req.cfg, pinned->phase).value;
        std::fprintf(stderr, "# symbol %d pinned: conditional ped %.9e\n", pinned->index, cond);
    }
    if (rec.mc) {
        std::fprintf(stderr, "# mc (%s)     %.9e +- %.9e  [%.9e, %.9e] @ %.4g\n",
                     rec.mc->mode == rissk::McMode::exact ? "exact" : "surrogate", rec.mc->p_hat,
                     rec.mc->std_err, rec.mc->ci_low, rec.mc->ci_high, a.confidence);
    }
    return 0;
}

int cmd_sweep(const SweepArgs& a, bool has_output, bool has_trials, bool has_seed, bool has_mode) {
    rissk::SweepSpec spec = rissk::parse_sweep_config_file(a.config);
    if (has_output) spec.output = a.output;
    if (has_trials) spec.trials = a.trials;
    if (has_seed) spec.seed = a.seed;
    if (has_mode) spec.mode = a.mode == "surrogate" ? rissk::McMode::surrogate : rissk::McMode::exact;

    const std::string csv = rissk::run_sweep(spec, a.workers);
    if (spec.output == "-") {
        std::fputs(csv.c_str(), stdout);
    } else {
        std::ofstream out(spec.output, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file '" + spec.output + "'");
        out << csv;
        if (!out.flush()) throw std::runtime_error("short write to '" + spec.output + "'");
    }
    std::size_t rows = 0;
    for (char ch : csv) rows += ch == '\n';
    std::fprintf(stderr, "# wrote %zu rows to %s\n", rows - 1, spec.output.c_str());
    return 0;
}

int cmd_validate(const ValidateArgs& a) {
    rissk::ValidationOptions opts;
    opts.quick = a.quick;
    opts.seed = a.seed;
    opts.workers = a.workers;
    const auto results = rissk::run_validation(opts);
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-32s %s\n", r.passed ? " ok " : "FAIL", r.name.c_str(), r.detail.c_str());
        passed += r.passed;
    }
    std::printf("%zu/%zu checks passed\n", passed, results.size());
    return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"error-rate analysis for RIS index and reflection-phase keying"};
    app.set_version_flag("--version", "rissk 1.0.0");
    app.require_subcommand(1);

    PointArgs pa;
    auto* point = app.add_subcommand("point", "evaluate a single configuration");
    point->add_option("--scheme", pa.scheme)->check(CLI::IsMember({"ssk", "rpm"}));
    point->add_option("-N,--elements", pa.n, "reflecting elements")
        ->required()
        ->check(CLI::PositiveNumber);
    point->add_option("-R,--branches", pa.nr, "receive branches")->check(CLI::Range(2, 65));
    point->add_option("-m,--fading", pa.m, "Nakagami shape")->check(CLI::PositiveNumber);
    point->add_option("--omega", pa.omega, "mean channel power")->check(CLI::PositiveNumber);
    point->add_option("--imbalance", pa.p, "quadrature power imbalance")
        ->check(CLI::Range(-0.999999, 0.999999));
    auto* k_opt = point->add_option("-k,--impairment", pa.k, "aggregate impairment level")
                      ->check(CLI::Range(0.0, 1.0));
    auto* kt_opt =
        point->add_option("--kt", pa.kt, "transmit impairment level")->check(CLI::Range(0.0, 1.0));
    auto* kr_opt =
        point->add_option("--kr", pa.kr, "receive impairment level")->check(CLI::Range(0.0, 1.0));
    kt_opt->excludes(k_opt);
    kr_opt->excludes(k_opt);
    point->add_option("-M,--order", pa.m_order, "reflection-phase constellation size");
    point->add_option("--snr-db", pa.snr_db, "average SNR in dB")->required();
    point->add_option("--trials", pa.trials, "Monte Carlo trials (0: analytic only)");
    point->add_option("--mode", pa.mode)->check(CLI::IsMember({"exact", "surrogate"}));
    point->add_option("--seed", pa.seed);
    point->add_option("--workers", pa.workers, "0: hardware concurrency");
    point->add_option("--rpm-symbol", pa.rpm_symbol, "pin the Monte Carlo run to one symbol (1-based)");
    point->add_option("--confidence", pa.confidence)->check(CLI::Range(0.5, 0.9999999));

    SweepArgs sa;
    auto* sweep = app.add_subcommand("sweep", "run a config-driven grid to CSV");
    sweep->add_option("-c,--config", sa.config, "sweep config file")
        ->required()
        ->check(CLI::ExistingFile);
    auto* out_opt = sweep->add_option("-o,--output", sa.output, "output path ('-' for stdout)");
    auto* trials_opt = sweep->add_option("--trials", sa.trials, "override trials per row");
    auto* seed_opt = sweep->add_option("--seed", sa.seed, "override master seed");
    auto* mode_opt =
        sweep->add_option("--mode", sa.mode)->check(CLI::IsMember({"exact", "surrogate"}));
    sweep->add_option("--workers", sa.workers, "0: hardware concurrency");

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "run the numerical self-check suite");
    validate->add_flag("--quick", va.quick, "smaller samples, under a minute");
    validate->add_option("--seed", va.seed);
    validate->add_option("--workers", va.workers, "0: hardware concurrency");

    try {
        app.parse(argc, argv);
        if (*point) return cmd_point(pa, kt_opt->count() > 0 || kr_opt->count() > 0);
        if (*sweep)
            return cmd_sweep(sa, out_opt->count() > 0, trials_opt->count() > 0,
                             seed_opt->count() > 0, mode_opt->count() > 0);
        return cmd_validate(va);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const rissk::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
