#include "rissk/verify.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rissk/numerics.hpp"

namespace rissk {

namespace {

// Newton iteration on the orthonormal Hermite-function recurrence.  The
// functions carry the exp(-z^2/2) factor through the recurrence, which keeps
// every intermediate bounded; the bare polynomials overflow near the largest
// root once n reaches ~250.  Roots and (after unweighting) weights match the
// polynomial rule exactly.
void hermite_root(int n, double& z, double& deriv) {
    constexpr double eps = 1e-15;
    for (int it = 0; it < 64; ++it) {
        double p1 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * z * z);
        double p2 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
        }
        deriv = std::sqrt(2.0 * n) * p2 - z * p1;
        const double dz = p1 / deriv;
        z -= dz;
        if (std::fabs(dz) <= eps * std::max(1.0, std::fabs(z))) return;
    }
}

struct LogComponent {
    double log_value;
    bool converged;
};

// log E[exp{s U^2}], U ~ N(mu, var), by Gauss-Hermite after recentring the
// integration variable on the integrand's mode and rescaling to its
// curvature.  Node placement uses the mode/width only; the integrand itself
// is evaluated from the raw (mu, var, s), so a wrong closed form cannot
// leak in through the substitution.
double log_component_quadrature(double mu, double var, double s, const HermiteRule& rule) {
    const double lambda = 0.5 / var - s;           // minus half the log-integrand curvature
    const double center = mu / (1.0 - 2.0 * s * var);
    const double sigma_t = 1.0 / std::sqrt(2.0 * lambda);
    const double gc = s * center * center - (center - mu) * (center - mu) / (2.0 * var);
    // g(center + d) - g(center) + t^2 expanded exactly (g is quadratic):
    // d * g'(center) + t^2 (1 - 2 lambda sigma_t^2); both residuals are ~ulp.
    const double gp = 2.0 * s * center - (center - mu) / var;
    const double q = 1.0 - 2.0 * lambda * sigma_t * sigma_t;
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        const double d = std::numbers::sqrt2 * sigma_t * t;
        acc += rule.weights[i] * std::exp(d * gp + q * t * t);
    }
    const double sigma = std::sqrt(var);
    return gc + std::log(acc * sigma_t / (sigma * std::sqrt(std::numbers::pi)));
}

QuadratureResult product_quadrature(double mu_u, double var_u, double mu_v, double var_v, double s,
                                    const QuadratureSpec& spec) {
    if (!(s <= 0.0) || !std::isfinite(s))
        throw std::domain_error("mgf_by_quadrature: s must be finite and <= 0");
    if (spec.node_count < 2 || spec.node_count % 2 != 0 || spec.node_count > 256)
        throw std::domain_error("mgf_by_quadrature: node_count must be even, in 2..256");
    const HermiteRule coarse = gauss_hermite(spec.node_count);
    const HermiteRule fine = gauss_hermite(2 * spec.node_count);
    const double log_coarse =
        log_component_quadrature(mu_u, var_u, s, coarse) + log_component_quadrature(mu_v, var_v, s, coarse);
    const double log_fine =
        log_component_quadrature(mu_u, var_u, s, fine) + log_component_quadrature(mu_v, var_v, s, fine);
    QuadratureResult out;
    out.value = std::exp(log_fine);
    out.converged = std::fabs(log_fine - log_coarse) <= 1e-12;
    return out;
}

}  // namespace

HermiteRule gauss_hermite(int n) {
    if (n < 2 || n > 512) throw std::domain_error("gauss_hermite: need 2 <= n <= 512");
    HermiteRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    std::vector<double> root(static_cast<std::size_t>(half), 0.0);  // positive roots, largest first
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * root[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * root[1];
        else
            z = 2.0 * z - root[static_cast<std::size_t>(i) - 2];
        double deriv = 0.0;
        hermite_root(n, z, deriv);
        root[static_cast<std::size_t>(i)] = z;
        // The walk visits roots largest first; store the rule ascending.
        rule.nodes[static_cast<std::size_t>(i)] = -z;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        // deriv is the Hermite-function slope; exp(-z^2) restores the
        // polynomial-rule weight 2 / H'(z)^2.
        const double w = 2.0 * std::exp(-z * z) / (deriv * deriv);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

QuadratureResult mgf_by_quadrature(const SskMoments& mom, double s, const QuadratureSpec& spec) {
    return product_quadrature(mom.mu1, mom.b_sk + mom.c_sk, 0.0, mom.c_sk, s, spec);
}

QuadratureResult mgf_by_quadrature(const RpmMoments& mom, double s, const QuadratureSpec& spec) {
    return product_quadrature(mom.mu_h1, mom.b_rp + mom.c_rp, mom.mu_h2, mom.d_rp + mom.c_rp, s, spec);
}

RationalIdentity zero_snr_sum_identity(int l) {
    namespace mp = boost::multiprecision;
    if (l < 1 || l > 64) throw std::domain_error("zero_snr_sum_identity: l must lie in 1..64");
    mp::cpp_rational lhs = 0;
    for (int r = 1; r <= l; ++r) {
        const mp::cpp_rational term(mp::cpp_int(binomial(l, r)), mp::cpp_int(r + 1));
        lhs += (r % 2 == 1) ? term : -term;
    }
    const mp::cpp_rational rhs(l, l + 1);
    RationalIdentity out;
    out.lhs = lhs.str();
    out.rhs = rhs.str();
    out.equal = lhs == rhs;
    return out;
}

}  // namespace rissk
