#include "rissk/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rissk/rng.hpp"

namespace rissk {

namespace {

std::string fmt_prob(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9e", v);
    return buf;
}

std::string fmt_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(trim(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

double parse_double(const std::string& tok, int line, const std::string& key) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ConfigError(line, "bad number '" + tok + "' for key '" + key + "'");
    }
    if (used != tok.size() || !std::isfinite(v))
        throw ConfigError(line, "bad number '" + tok + "' for key '" + key + "'");
    return v;
}

long long parse_int(const std::string& tok, int line, const std::string& key) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw ConfigError(line, "bad integer '" + tok + "' for key '" + key + "'");
    }
    if (used != tok.size())
        throw ConfigError(line, "bad integer '" + tok + "' for key '" + key + "'");
    return v;
}

SchemeSpec parse_scheme(const std::string& tok, int line) {
    if (tok == "ssk") return {Scheme::ssk, 0};
    if (tok.rfind("rpm-", 0) == 0) {
        const long long m = parse_int(tok.substr(4), line, "schemes");
        if (m < 2 || m > 4096 || (m & (m - 1)) != 0)
            throw ConfigError(line, "rpm order must be a power of two >= 2, got '" + tok + "'");
        return {Scheme::rpm, static_cast<int>(m)};
    }
    throw ConfigError(line, "unknown scheme '" + tok + "' (expected ssk or rpm-<M>)");
}

// "start:stop:step" (inclusive of stop up to a half-step slack), a single
// value, or a comma list.
std::vector<double> parse_snr_grid(const std::string& value, int line) {
    if (value.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= value.size()) {
            std::size_t colon = value.find(':', pos);
            if (colon == std::string::npos) colon = value.size();
            parts.push_back(trim(value.substr(pos, colon - pos)));
            pos = colon + 1;
        }
        if (parts.size() != 3)
            throw ConfigError(line, "snr_db range must be start:stop:step");
        const double start = parse_double(parts[0], line, "snr_db");
        const double stop = parse_double(parts[1], line, "snr_db");
        const double step = parse_double(parts[2], line, "snr_db");
        if (step <= 0.0) throw ConfigError(line, "snr_db step must be positive");
        if (stop < start) throw ConfigError(line, "snr_db stop is below start");
        std::vector<double> grid;
        for (int i = 0;; ++i) {
            const double v = start + step * i;
            if (v > stop + step * 0.5) break;
            grid.push_back(std::min(v, stop));
        }
        return grid;
    }
    std::vector<double> grid;
    for (const auto& tok : split_list(value)) {
        if (tok.empty()) throw ConfigError(line, "empty entry in snr_db list");
        grid.push_back(parse_double(tok, line, "snr_db"));
    }
    return grid;
}

}  // namespace

PointRecord evaluate_point(const PointRequest& req) {
    SystemConfig cfg = req.cfg;
    validate(cfg);

    PointRecord rec;
    rec.cfg = cfg;
    rec.gamma_db = req.gamma_db;
    if (cfg.scheme == Scheme::ssk) {
        rec.ped_analytic = ped_ssk(cfg).value;
        rec.ped_high_snr = ped_ssk_high_snr(cfg).value;
        rec.ped_low_snr = ped_ssk_low_snr(cfg).value;
    } else {
        rec.ped_analytic = ped_rpm(cfg).value;
        rec.ped_high_snr = ped_rpm_high_snr(cfg).value;
        rec.ped_low_snr = ped_rpm_low_snr(cfg).value;
    }
    rec.ped_zero_snr = ped_zero_snr(cfg.n_r);
    if ((cfg.n_r & (cfg.n_r - 1)) == 0) rec.ber = ber_union_bound(rec.ped_analytic, cfg.n_r);

    if (req.trials > 0) {
        McConfig mc;
        mc.trials = req.trials;
        mc.seed = req.seed;
        mc.mode = req.mode;
        mc.workers = req.workers;
        rec.mc = (req.mode == McMode::exact) ? estimate_ped_exact(cfg, mc)
                                             : estimate_ped_surrogate(cfg, mc);
    }
    return rec;
}

std::string csv_header() {
    return "scheme,N,N_R,m,omega,p,k,M,gamma_db,trials,mode,ped_mc,ped_mc_stderr,"
           "ped_analytic,ped_high_snr,ped_low_snr,ped_zero_snr,ber_bound,vacuous";
}

std::string csv_row(const PointRecord& rec) {
    const SystemConfig& cfg = rec.cfg;
    std::string row;
    row += (cfg.scheme == Scheme::ssk) ? "ssk" : "rpm";
    row += ',';
    row += std::to_string(cfg.n);
    row += ',';
    row += std::to_string(cfg.n_r);
    row += ',';
    row += fmt_param(cfg.channel.m);
    row += ',';
    row += fmt_param(cfg.channel.omega);
    row += ',';
    row += fmt_param(cfg.channel.p);
    row += ',';
    row += fmt_param(cfg.k);
    row += ',';
    if (cfg.scheme == Scheme::rpm) row += std::to_string(cfg.m_order);
    row += ',';
    row += fmt_param(rec.gamma_db);
    row += ',';
    if (rec.mc) row += std::to_string(rec.mc->trials);
    row += ',';
    if (rec.mc) row += (rec.mc->mode == McMode::exact) ? "exact" : "surrogate";
    row += ',';
    if (rec.mc) row += fmt_prob(rec.mc->p_hat);
    row += ',';
    if (rec.mc) row += fmt_prob(rec.mc->std_err);
    row += ',';
    row += fmt_prob(rec.ped_analytic);
    row += ',';
    row += fmt_prob(rec.ped_high_snr);
    row += ',';
    row += fmt_prob(rec.ped_low_snr);
    row += ',';
    row += fmt_prob(rec.ped_zero_snr);
    row += ',';
    if (rec.ber) row += fmt_prob(rec.ber->value);
    row += ',';
    if (rec.ber) row += rec.ber->vacuous ? "1" : "0";
    return row;
}

SweepSpec parse_sweep_config(std::istream& in) {
    SweepSpec spec;
    bool saw_m = false;
    bool saw_k = false;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "expected key = value, got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError(line, "missing key before '='");
        if (value.empty()) throw ConfigError(line, "missing value for key '" + key + "'");

        if (key == "schemes") {
            spec.schemes.clear();
            for (const auto& tok : split_list(value)) spec.schemes.push_back(parse_scheme(tok, line));
        } else if (key == "n") {
            spec.n_values.clear();
            for (const auto& tok : split_list(value)) {
                const long long v = parse_int(tok, line, key);
                if (v < 1) throw ConfigError(line, "n must be >= 1");
                spec.n_values.push_back(static_cast<int>(v));
            }
        } else if (key == "nr") {
            spec.nr_values.clear();
            for (const auto& tok : split_list(value)) {
                const long long v = parse_int(tok, line, key);
                if (v < 2) throw ConfigError(line, "nr must be >= 2");
                spec.nr_values.push_back(static_cast<int>(v));
            }
        } else if (key == "m") {
            spec.m_values.clear();
            saw_m = true;
            for (const auto& tok : split_list(value)) {
                const double v = parse_double(tok, line, key);
                if (v <= 0.0) throw ConfigError(line, "m must be positive");
                spec.m_values.push_back(v);
            }
        } else if (key == "k") {
            spec.k_values.clear();
            saw_k = true;
            for (const auto& tok : split_list(value)) {
                const double v = parse_double(tok, line, key);
                if (v < 0.0 || v > 1.0) throw ConfigError(line, "k must lie in [0, 1]");
                spec.k_values.push_back(v);
            }
        } else if (key == "omega") {
            spec.omega = parse_double(value, line, key);
            if (spec.omega <= 0.0) throw ConfigError(line, "omega must be positive");
        } else if (key == "p") {
            spec.p = parse_double(value, line, key);
            if (!(std::abs(spec.p) < 1.0)) throw ConfigError(line, "p must satisfy |p| < 1");
        } else if (key == "snr_db") {
            spec.snr_db = parse_snr_grid(value, line);
        } else if (key == "trials") {
            const long long v = parse_int(value, line, key);
            if (v < 0) throw ConfigError(line, "trials must be non-negative");
            spec.trials = static_cast<std::uint64_t>(v);
        } else if (key == "seed") {
            const long long v = parse_int(value, line, key);
            if (v < 0) throw ConfigError(line, "seed must be non-negative");
            spec.seed = static_cast<std::uint64_t>(v);
        } else if (key == "mode") {
            if (value == "exact") spec.mode = McMode::exact;
            else if (value == "surrogate") spec.mode = McMode::surrogate;
            else throw ConfigError(line, "mode must be exact or surrogate");
        } else if (key == "output") {
            spec.output = value;
        } else {
            throw ConfigError(line, "unknown key '" + key + "'");
        }
    }
    if (spec.schemes.empty()) throw ConfigError(line, "schemes list is required and non-empty");
    if (spec.n_values.empty()) throw ConfigError(line, "n list is required and non-empty");
    if (spec.nr_values.empty()) throw ConfigError(line, "nr list is required and non-empty");
    if (spec.snr_db.empty()) throw ConfigError(line, "snr_db grid is required and non-empty");
    if (!saw_m && spec.m_values.empty()) spec.m_values = {1.0};
    if (!saw_k && spec.k_values.empty()) spec.k_values = {0.0};
    return spec;
}

SweepSpec parse_sweep_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    return parse_sweep_config(in);
}

std::string run_sweep(const SweepSpec& spec, unsigned workers) {
    std::string csv = csv_header();
    csv += '\n';
    std::uint64_t row_index = 0;
    for (const auto& scheme : spec.schemes)
        for (int n : spec.n_values)
            for (int nr : spec.nr_values)
                for (double m : spec.m_values)
                    for (double k : spec.k_values)
                        for (double snr_db : spec.snr_db) {
                            PointRequest req;
                            req.cfg.scheme = scheme.scheme;
                            if (scheme.scheme == Scheme::rpm) req.cfg.m_order = scheme.m_order;
                            req.cfg.n = n;
                            req.cfg.n_r = nr;
                            req.cfg.channel.m = m;
                            req.cfg.channel.omega = spec.omega;
                            req.cfg.channel.p = spec.p;
                            req.cfg.k = k;
                            req.cfg.n0 = 1.0;
                            req.cfg.es = std::pow(10.0, snr_db / 10.0) / spec.omega;
                            req.gamma_db = snr_db;
                            req.trials = spec.trials;
                            req.mode = spec.mode;
                            req.seed = mix_seed(spec.seed, row_index);
                            req.workers = workers;
                            csv += csv_row(evaluate_point(req));
                            csv += '\n';
                            ++row_index;
                        }
    return csv;
}

}  // namespace rissk
