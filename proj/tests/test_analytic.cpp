#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "display_forms.hpp"
#include "rissk/analytic.hpp"
#include "rissk/rng.hpp"

using namespace rissk;

namespace {

SystemConfig make(Scheme scheme, int n, int nr, double m, double k, double gamma, int order = 4) {
    SystemConfig cfg;
    cfg.scheme = scheme;
    cfg.n = n;
    cfg.n_r = nr;
    cfg.channel.m = m;
    cfg.k = k;
    cfg.es = gamma;
    cfg.m_order = order;
    return cfg;
}

}  // namespace

TEST_CASE("moment bundle at the single-element Rayleigh point") {
    // n = 1, m = 1, es = omega = n0 = 1, k = 0: every term is elementary.
    const auto mom = ssk_moments(make(Scheme::ssk, 1, 2, 1.0, 0.0, 1.0));
    CHECK(mom.mu1 == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-15));
    CHECK(mom.a == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(mom.b_sk == doctest::Approx(1.0 - std::numbers::pi / 4.0).epsilon(1e-14));
    CHECK(mom.c_sk == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("impairments widen the distortion component") {
    const auto ideal = ssk_moments(make(Scheme::ssk, 16, 2, 1.0, 0.0, 2.0));
    const auto dirty = ssk_moments(make(Scheme::ssk, 16, 2, 1.0, 0.3, 2.0));
    CHECK(dirty.a > ideal.a);
    CHECK(dirty.c_sk > ideal.c_sk);
    CHECK(dirty.b_sk == doctest::Approx(ideal.b_sk));
    CHECK(dirty.mu1 == doctest::Approx(ideal.mu1));
}

TEST_CASE("phase split preserves the total bundle") {
    const auto cfg = make(Scheme::rpm, 8, 2, 2.0, 0.1, 3.0);
    const auto sk = ssk_moments(cfg);
    for (double psi : {0.0, 0.7, 2.1, 5.5}) {
        const auto rp = rpm_moments(cfg, psi);
        CHECK(rp.mu_h1 * rp.mu_h1 + rp.mu_h2 * rp.mu_h2 ==
              doctest::Approx(sk.mu1 * sk.mu1).epsilon(1e-13));
        CHECK(rp.b_rp + rp.d_rp == doctest::Approx(sk.b_sk).epsilon(1e-13));
        CHECK(rp.a == sk.a);
        CHECK(rp.c_rp == sk.c_sk);
    }
}

TEST_CASE("scalar transform basics") {
    SskMoments mom{1.3, 4.0, 0.7, 0.4};
    CHECK(cf_quadratic_form(mom, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // Zero-mean case has the elementary product form.
    SskMoments central{0.0, 4.0, 0.7, 0.4};
    const double s = -0.35;
    const double want = 1.0 / std::sqrt((1.0 - 2.0 * s * 1.1) * (1.0 - 2.0 * s * 0.4));
    CHECK(cf_quadratic_form(central, s) == doctest::Approx(want).epsilon(1e-15));
    CHECK_THROWS_AS(cf_quadratic_form(mom, 0.5), std::domain_error);
    CHECK_THROWS_AS(cf_quadratic_form(mom, std::nan("")), std::domain_error);
}

TEST_CASE("pairwise closed form equals its literal spelling") {
    Philox rng(314, 0);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 256);
        const double m = 0.5 + 7.5 * rng.uniform();
        const double k = 0.3 * rng.uniform();
        const double gamma = std::pow(10.0, -4.0 + 10.0 * rng.uniform());
        const auto cfg = make(Scheme::ssk, n, 2, m, k, gamma);
        CHECK(pped_ssk(cfg).value ==
              doctest::Approx(display::pairwise_ssk(cfg)).epsilon(1e-12));
    }
}

TEST_CASE("generalized closed form equals its literal spelling") {
    Philox rng(315, 0);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 256);
        const int nr = 2 + static_cast<int>(rng.next_u64() % 7);
        const double m = 0.5 + 7.5 * rng.uniform();
        const double k = 0.3 * rng.uniform();
        const double gamma = std::pow(10.0, -4.0 + 10.0 * rng.uniform());
        const auto cfg = make(Scheme::ssk, n, nr, m, k, gamma);
        CHECK(ped_ssk(cfg).value ==
              doctest::Approx(display::generalized_ssk(cfg)).epsilon(1e-10));
    }
}

TEST_CASE("phase-keyed closed forms equal their literal spellings") {
    Philox rng(316, 0);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 256);
        const int nr = 2 + static_cast<int>(rng.next_u64() % 7);
        const double m = 0.5 + 7.5 * rng.uniform();
        const double k = 0.3 * rng.uniform();
        const double gamma = std::pow(10.0, -4.0 + 10.0 * rng.uniform());
        const double psi = 2.0 * std::numbers::pi * rng.uniform();
        const int order = 2 << (rng.next_u64() % 3);
        const auto cfg = make(Scheme::rpm, n, nr, m, k, gamma, order);
        CHECK(pped_rpm_conditional(cfg, psi).value ==
              doctest::Approx(display::pairwise_rpm(cfg, psi)).epsilon(1e-12));
        CHECK(ped_rpm(cfg).value ==
              doctest::Approx(display::generalized_rpm(cfg)).epsilon(1e-10));
    }
}

TEST_CASE("two-branch generalized form reduces to the pairwise form") {
    for (double gamma : {1e-3, 1.0, 1e4}) {
        const auto cfg = make(Scheme::ssk, 32, 2, 1.2, 0.15, gamma);
        CHECK(ped_ssk(cfg).value == doctest::Approx(pped_ssk(cfg).value).epsilon(1e-14));
    }
}

TEST_CASE("quarter-turn phases reproduce the index-only statistics") {
    // At psi = 0 or pi/2 the two quadratures swap roles, so the conditional
    // error probability equals the unkeyed one exactly.
    const auto cfg = make(Scheme::rpm, 16, 4, 1.0, 0.1, 5.0);
    const double unkeyed = ped_ssk(make(Scheme::ssk, 16, 4, 1.0, 0.1, 5.0)).value;
    CHECK(ped_rpm_conditional(cfg, 0.0).value == doctest::Approx(unkeyed).epsilon(1e-14));
    CHECK(ped_rpm_conditional(cfg, std::numbers::pi / 2.0).value ==
          doctest::Approx(unkeyed).epsilon(1e-14));
    // Supplementary and opposite phases share sin^2/cos^2, hence the value.
    CHECK(ped_rpm_conditional(cfg, 0.9).value ==
          doctest::Approx(ped_rpm_conditional(cfg, std::numbers::pi - 0.9).value).epsilon(1e-14));
    CHECK(ped_rpm_conditional(cfg, 0.9).value ==
          doctest::Approx(ped_rpm_conditional(cfg, 0.9 + std::numbers::pi).value).epsilon(1e-14));
}

TEST_CASE("constellation average and conditionals") {
    const auto cfg = make(Scheme::rpm, 24, 3, 1.4, 0.2, 2.0, 8);
    double mean = 0.0;
    for (const auto& sym : rpm_constellation(8))
        mean += ped_rpm_conditional(cfg, sym.phase).value;
    CHECK(ped_rpm(cfg).value == doctest::Approx(mean / 8.0).epsilon(1e-14));
    CHECK_THROWS_AS(ped_rpm(make(Scheme::ssk, 8, 2, 1.0, 0.0, 1.0)), std::domain_error);
}

TEST_CASE("zero-SNR value depends only on the branch count") {
    CHECK(ped_zero_snr(2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ped_zero_snr(3) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(ped_zero_snr(5) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_THROWS_AS(ped_zero_snr(1), std::domain_error);
    for (int nr : {2, 4, 8}) {
        const auto cfg = make(Scheme::ssk, 16, nr, 1.3, 0.2, 0.0);
        CHECK(ped_ssk(cfg).value == doctest::Approx(ped_zero_snr(nr)).epsilon(1e-12));
        const auto rp = make(Scheme::rpm, 16, nr, 1.3, 0.2, 0.0);
        CHECK(ped_rpm(rp).value == doctest::Approx(ped_zero_snr(nr)).epsilon(1e-12));
    }
}

TEST_CASE("high-SNR floor is SNR free and matches a hand value") {
    const auto a = make(Scheme::ssk, 32, 2, 1.0, 0.0, 1.0);
    const auto b = make(Scheme::ssk, 32, 2, 1.0, 0.0, 1e6);
    CHECK(ped_ssk_high_snr(a).value == ped_ssk_high_snr(b).value);
    // N = 32, m = 1, k = 0: floor = exp(-N g / (3 - 2g)) / sqrt(3 - 2g),
    // g = pi/4.
    const double g = std::numbers::pi / 4.0;
    const double d2 = 1.0 + 2.0 * (1.0 - g);
    const double want = std::exp(-32.0 * g / d2) / std::sqrt(d2);
    CHECK(ped_ssk_high_snr(a).value == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("low-SNR expansion limits to the zero-SNR value") {
    const auto cfg = make(Scheme::ssk, 32, 4, 1.0, 0.1, 1e-300);
    CHECK(ped_ssk_low_snr(cfg).value == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("phase keying does not change the low-SNR expansion") {
    // The two exponential factors multiply into a psi-free product, so the
    // averaged expansion coincides with the index-only one.
    for (double gamma : {1e-4, 1e-3}) {
        const auto rp = make(Scheme::rpm, 32, 4, 1.0, 0.1, gamma);
        const auto sk = make(Scheme::ssk, 32, 4, 1.0, 0.1, gamma);
        CHECK(ped_rpm_low_snr(rp).value ==
              doctest::Approx(ped_ssk_low_snr(sk).value).epsilon(1e-14));
    }
}

TEST_CASE("union bound scales the pairwise error by half the branch count") {
    const auto b = ber_union_bound(0.2, 4);
    CHECK(b.value == 0.4);
    CHECK_FALSE(b.vacuous);
    const auto v = ber_union_bound(0.3, 4);
    CHECK(v.value == doctest::Approx(0.6));
    CHECK(v.vacuous);
    CHECK(ber_union_bound(0.0, 8).value == 0.0);
    CHECK_THROWS_AS(ber_union_bound(0.2, 3), std::domain_error);
    CHECK_THROWS_AS(ber_union_bound(0.2, 1), std::domain_error);
    CHECK_THROWS_AS(ber_union_bound(1.5, 4), std::domain_error);
    CHECK_THROWS_AS(ber_union_bound(-0.1, 4), std::domain_error);
}

TEST_CASE("error probability decreases with SNR and element count") {
    const double p1 = ped_ssk(make(Scheme::ssk, 32, 2, 1.0, 0.1, 0.01)).value;
    const double p2 = ped_ssk(make(Scheme::ssk, 32, 2, 1.0, 0.1, 0.1)).value;
    const double p3 = ped_ssk(make(Scheme::ssk, 64, 2, 1.0, 0.1, 0.1)).value;
    CHECK(p2 < p1);
    CHECK(p3 < p2);
}
