#pragma once

#include <optional>

#include "rissk/linkmodel.hpp"

namespace rissk {

// Second-order statistics of the detector decision variables under the
// componentwise Gaussian limit, in raw energy units.
//
//   mu1  : mean of the phase-aligned target component
//   a    : mean energy of a non-target branch (signal + distortion + noise)
//   b_sk : variance contributed by magnitude fluctuation of the aligned sum
//   c_sk : per-component variance of distortion plus noise
struct SskMoments {
    double mu1;
    double a;
    double b_sk;
    double c_sk;
};

// Conditional statistics for a reflection-phase symbol with phase psi. `a`
// and c_rp coincide with the SSK bundle; the aligned-sum moments split into
// the two quadratures through sin/cos psi.
struct RpmMoments {
    double mu_h1;
    double mu_h2;
    double a;
    double b_rp;
    double c_rp;
    double d_rp;
    double psi;
};

SskMoments ssk_moments(const SystemConfig& cfg);
RpmMoments rpm_moments(const SystemConfig& cfg, double psi);

// E[exp{s (U^2 + V^2)}] for independent Gaussians U, V with the bundle's
// means and variances; s <= 0.  This factorized scalar form is the single
// evaluation route every error-probability formula goes through.
double cf_quadratic_form(const SskMoments& mom, double s);
double cf_quadratic_form(const RpmMoments& mom, double s);

struct PedResult {
    double value = 0.0;
    SystemConfig cfg{};
    std::optional<double> psi{};
};

// Pairwise error metric (N_R = 2 reduction) and the generalized metric for
// L = N_R - 1 competing branches.
PedResult pped_ssk(const SystemConfig& cfg);
PedResult ped_ssk(const SystemConfig& cfg);

PedResult ped_ssk_high_snr(const SystemConfig& cfg);
PedResult ped_ssk_low_snr(const SystemConfig& cfg);
double ped_zero_snr(int n_branches);

PedResult pped_rpm_conditional(const SystemConfig& cfg, double psi);
PedResult ped_rpm_conditional(const SystemConfig& cfg, double psi);
PedResult ped_rpm(const SystemConfig& cfg);
PedResult ped_rpm_high_snr(const SystemConfig& cfg);
PedResult ped_rpm_low_snr(const SystemConfig& cfg);

struct BerBound {
    double value = 0.0;
    bool vacuous = false;  // a bound above 1/2 says nothing about a detector
};

// Union bound (N_R / 2) * PED; N_R must be a power of two so the branch
// index carries log2(N_R) whole bits.
BerBound ber_union_bound(double ped, int n_branches);

}  // namespace rissk
