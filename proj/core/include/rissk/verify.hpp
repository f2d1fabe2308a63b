#pragma once

#include <string>
#include <vector>

#include "rissk/analytic.hpp"

namespace rissk {

// Numerical cross-checks that deliberately avoid the closed-form MGF algebra
// in analytic.cpp, so the two routes can only agree if that algebra is right.

struct QuadratureSpec {
    int node_count = 96;  // must be even, in 2..256 (the doubled check rule tops out at 512)
};

struct QuadratureResult {
    double value = 0.0;
    // The evaluation is repeated with doubled node count; converged means the
    // two results agree to 1e-12 relative.
    bool converged = false;
};

// Gauss-Hermite abscissas and weights for weight exp(-x^2): integrates
// sum w_i f(x_i) ~ integral f(x) exp(-x^2) dx.  Nodes ascend; n in 2..512.
struct HermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

HermiteRule gauss_hermite(int n);

// E[exp{s (U^2 + V^2)}] by numeric integration, component by component, for
// the Gaussian pairs described by a moment bundle; s <= 0.
QuadratureResult mgf_by_quadrature(const SskMoments& mom, double s, const QuadratureSpec& spec = {});
QuadratureResult mgf_by_quadrature(const RpmMoments& mom, double s, const QuadratureSpec& spec = {});

// Exact-rational evaluation of sum_{r=1..L} (-1)^(r-1) C(L,r)/(r+1) against
// L/(L+1); both sides come back as reduced fraction strings.
struct RationalIdentity {
    std::string lhs;
    std::string rhs;
    bool equal = false;
};

RationalIdentity zero_snr_sum_identity(int l);

}  // namespace rissk
