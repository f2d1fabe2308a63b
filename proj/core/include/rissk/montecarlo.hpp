#pragma once

#include <cstdint>
#include <optional>

#include "rissk/analytic.hpp"
#include "rissk/linkmodel.hpp"

namespace rissk {

enum class McMode { exact, surrogate };

// Trials are split into fixed chunks; chunk i always consumes the Philox
// stream (seed, i), and per-chunk error counts are reduced in chunk order,
// so an estimate depends only on (seed, trials, chunk_size, model inputs),
// never on the worker count.
struct McConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t chunk_size = 65536;
    McMode mode = McMode::exact;
    double confidence_level = 0.99;
    unsigned workers = 0;  // 0 = hardware concurrency
};

struct McEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    double ci_low = 0.0;   // normal-approximation interval, clamped to [0, 1]
    double ci_high = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    McMode mode = McMode::exact;
};

// Simulates the full receive chain per trial: fresh channel, one shared
// distortion draw, per-branch noise, greedy max-energy detection.  For RPM
// the symbol is drawn uniformly unless pinned.
McEstimate estimate_ped_exact(const SystemConfig& cfg, const McConfig& mc,
                              std::optional<RpmSymbol> pinned = std::nullopt);

// Samples the Gaussian decision-variable surrogate instead: target energy
// (U^2 + V^2) from the moment bundle against the maximum of L = N_R - 1
// exponential branch energies with mean a.  This estimates the closed-form
// PED integral itself, so it isolates the MGF/summation algebra from the
// Gaussian-limit step.  For RPM, psi pins the symbol phase; otherwise the
// constellation is drawn uniformly per trial.
McEstimate estimate_ped_surrogate(const SystemConfig& cfg, const McConfig& mc,
                                  std::optional<double> psi = std::nullopt);

}  // namespace rissk
