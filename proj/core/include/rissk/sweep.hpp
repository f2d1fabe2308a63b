#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rissk/analytic.hpp"
#include "rissk/montecarlo.hpp"

namespace rissk {

// Everything needed to evaluate one configuration row: analytic values,
// asymptotic references, the BER bound when N_R carries whole index bits,
// and an optional Monte Carlo estimate.
struct PointRequest {
    SystemConfig cfg{};
    double gamma_db = 0.0;
    std::uint64_t trials = 0;  // 0 keeps the row analytic-only
    McMode mode = McMode::exact;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

struct PointRecord {
    SystemConfig cfg{};
    double gamma_db = 0.0;
    double ped_analytic = 0.0;
    double ped_high_snr = 0.0;
    double ped_low_snr = 0.0;
    double ped_zero_snr = 0.0;
    std::optional<McEstimate> mc{};
    std::optional<BerBound> ber{};
};

PointRecord evaluate_point(const PointRequest& req);

// Fixed CSV schema; absent values are empty fields, probabilities carry 10
// significant digits so error floors near 1e-8 survive a round trip.
std::string csv_header();
std::string csv_row(const PointRecord& rec);

struct ConfigError : std::runtime_error {
    ConfigError(int line, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line) + ": " + what), line_number(line) {}
    int line_number;
};

struct SchemeSpec {
    Scheme scheme = Scheme::ssk;
    int m_order = 0;  // 0 for SSK
};

// Parsed sweep description: cartesian grid over schemes x N x N_R x m x k,
// swept over the SNR grid, all in deterministic order.
struct SweepSpec {
    std::vector<SchemeSpec> schemes;
    std::vector<int> n_values;
    std::vector<int> nr_values;
    std::vector<double> m_values{1.0};
    std::vector<double> k_values{0.0};
    double omega = 1.0;
    double p = 0.0;
    std::vector<double> snr_db;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    McMode mode = McMode::exact;
    std::string output = "sweep.csv";
};

// Flat `key = value` format with `#` comments, comma lists, and dB grids as
// start:stop:step; throws ConfigError carrying the offending line number.
SweepSpec parse_sweep_config(std::istream& in);
SweepSpec parse_sweep_config_file(const std::string& path);

// Whole CSV as one string (header plus one row per grid point); each row's
// Monte Carlo run gets a seed derived from (spec.seed, row index), so the
// bytes depend only on the spec, never on the worker count.
std::string run_sweep(const SweepSpec& spec, unsigned workers = 0);

}  // namespace rissk
