#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rissk {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst-case numbers, thresholds, sample sizes
};

struct ValidationOptions {
    bool quick = false;      // smaller sample sizes, thinner grids
    unsigned workers = 0;    // 0: hardware concurrency
    std::uint64_t seed = 1;  // drives every randomized check
};

// Cross-checks the closed forms against quadrature, exact rational identities,
// the channel sampler against its distribution, and the Monte Carlo engine
// against determinism and CLT behaviour. Statistical checks use fixed seeds
// and preregistered thresholds, so a pass/fail outcome is reproducible.
std::vector<CheckResult> run_validation(const ValidationOptions& opts);

}  // namespace rissk
