#pragma once

#include <cstdint>
#include <span>

namespace rissk {

// Gamma(m + 1/2) / Gamma(m), evaluated through log-gamma so large m does not
// overflow.  Throws std::domain_error for m <= 0 or non-finite m.
double gamma_ratio(double m);

// Exact binomial coefficient C(l, r) from a precomputed Pascal triangle.
// l is capped at 64 so every value is exactly representable in 64 bits;
// throws std::domain_error for bad (l, r) and std::overflow_error for l > 64.
std::uint64_t binomial(int l, int r);

// Sum of an alternating, strongly cancelling series in the given order using
// Neumaier-compensated accumulation over long double.
double alternating_binomial_sum(std::span<const double> terms);

}  // namespace rissk
