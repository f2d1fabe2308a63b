#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "rissk/linkmodel.hpp"

using namespace rissk;

namespace {

SystemConfig basic(Scheme scheme = Scheme::ssk) {
    SystemConfig cfg;
    cfg.scheme = scheme;
    cfg.n = 4;
    cfg.n_r = 3;
    cfg.es = 2.0;
    cfg.n0 = 0.5;
    cfg.k = 0.2;
    cfg.channel = {1.5, 1.0, 0.0};
    return cfg;
}

}  // namespace

TEST_CASE("configuration validation") {
    CHECK_NOTHROW(validate(basic()));
    auto cfg = basic();
    cfg.es = 0.0;  // zero SNR is a supported operating point
    CHECK_NOTHROW(validate(cfg));
    cfg = basic();
    cfg.n = 0;
    CHECK_THROWS_AS(validate(cfg), std::domain_error);
    cfg = basic();
    cfg.n_r = 1;
    CHECK_THROWS_AS(validate(cfg), std::domain_error);
    cfg = basic();
    cfg.es = -1.0;
    CHECK_THROWS_AS(validate(cfg), std::domain_error);
    cfg = basic();
    cfg.n0 = 0.0;
    CHECK_THROWS_AS(validate(cfg), std::domain_error);
    cfg = basic();
    cfg.k = 1.5;
    CHECK_THROWS_AS(validate(cfg), std::domain_error);
    cfg = basic(Scheme::rpm);
    cfg.m_order = 3;
    CHECK_THROWS_AS(validate(cfg), std::domain_error);
    cfg.m_order = 8;
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("reflection symbols") {
    const auto s1 = rpm_symbol(1, 4);
    CHECK(s1.index == 1);
    CHECK(s1.phase == 0.0);
    const auto s3 = rpm_symbol(3, 4);
    CHECK(s3.phase == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK_THROWS_AS(rpm_symbol(0, 4), std::domain_error);
    CHECK_THROWS_AS(rpm_symbol(5, 4), std::domain_error);
    const auto constellation = rpm_constellation(8);
    REQUIRE(constellation.size() == 8);
    for (int i = 0; i < 8; ++i) {
        CHECK(constellation[i].index == i + 1);
        CHECK(constellation[i].phase == doctest::Approx(2.0 * std::numbers::pi * i / 8.0));
    }
}

TEST_CASE("impairment levels combine in quadrature") {
    CHECK(aggregate_k(0.1, 0.0) == doctest::Approx(0.1));
    CHECK(aggregate_k(0.3, 0.4) == doctest::Approx(0.5));
    CHECK(aggregate_k(0.0, 0.0) == 0.0);
}

TEST_CASE("greedy detector takes the first maximum") {
    CHECK(greedy_detect({1.0, 3.0, 2.0}) == 1);
    CHECK(greedy_detect({2.0, 2.0}) == 0);
    CHECK(greedy_detect({0.0, 0.0, 5.0}) == 2);
    CHECK(greedy_detect({7.0, 7.0, 7.0}) == 0);
}

TEST_CASE("branch energies are a deterministic function of the stream") {
    const auto cfg = basic();
    ChannelSampler sampler(cfg.channel);
    ChannelMatrix h(cfg.n, cfg.n_r);
    Philox ch(3, 0);
    sampler.fill(h, ch);
    Philox a(10, 5), b(10, 5);
    const auto e1 = received_energies(h, 1, cfg, std::nullopt, a);
    const auto e2 = received_energies(h, 1, cfg, std::nullopt, b);
    REQUIRE(e1.size() == 3);
    CHECK(e1 == e2);
    LinkWorkspace ws;
    Philox c(10, 5);
    received_energies(h, 1, cfg, std::nullopt, c, ws);
    for (std::size_t i = 0; i < e1.size(); ++i) CHECK(ws.energies[i] == e1[i]);
}

TEST_CASE("joint energy scaling leaves the decision unchanged") {
    // Scaling es and n0 by the same factor scales every |z|^2 by it exactly,
    // because both the distortion and the noise draws are scaled amplitudes.
    auto cfg = basic();
    ChannelSampler sampler(cfg.channel);
    ChannelMatrix h(cfg.n, cfg.n_r);
    Philox ch(4, 0);
    sampler.fill(h, ch);
    auto scaled = cfg;
    scaled.es *= 3.7;
    scaled.n0 *= 3.7;
    Philox a(21, 0), b(21, 0);
    const auto e = received_energies(h, 0, cfg, std::nullopt, a);
    const auto es = received_energies(h, 0, scaled, std::nullopt, b);
    for (std::size_t i = 0; i < e.size(); ++i)
        CHECK(es[i] == doctest::Approx(3.7 * e[i]).epsilon(1e-12));
    CHECK(greedy_detect(e) == greedy_detect(es));
}

TEST_CASE("the identity reflection symbol reproduces the unkeyed chain") {
    auto cfg = basic(Scheme::rpm);
    cfg.m_order = 4;
    auto unkeyed = cfg;
    unkeyed.scheme = Scheme::ssk;
    ChannelSampler sampler(cfg.channel);
    ChannelMatrix h(cfg.n, cfg.n_r);
    Philox ch(6, 0);
    sampler.fill(h, ch);
    Philox a(31, 2), b(31, 2);
    const auto keyed = received_energies(h, 2, cfg, rpm_symbol(1, 4), a);
    const auto plain = received_energies(h, 2, unkeyed, std::nullopt, b);
    for (std::size_t i = 0; i < keyed.size(); ++i) CHECK(keyed[i] == doctest::Approx(plain[i]));
}

TEST_CASE("an all-zero channel still produces finite energies") {
    const auto cfg = basic();
    ChannelMatrix h(cfg.n, cfg.n_r);  // zero initialized gains
    Philox rng(8, 0);
    const auto e = received_energies(h, 0, cfg, std::nullopt, rng);
    for (double v : e) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
    }
}

TEST_CASE("zero symbol energy makes every branch an equal contender") {
    auto cfg = basic();
    cfg.es = 0.0;
    cfg.n_r = 3;
    ChannelSampler sampler(cfg.channel);
    ChannelMatrix h(cfg.n, cfg.n_r);
    Philox rng(77, 0);
    const int trials = 30000;
    int counts[3] = {0, 0, 0};
    for (int t = 0; t < trials; ++t) {
        sampler.fill(h, rng);
        ++counts[greedy_detect(received_energies(h, 0, cfg, std::nullopt, rng))];
    }
    // Two-sided binomial check per bin at ~4 sigma.
    const double want = trials / 3.0;
    const double se = std::sqrt(trials * (1.0 / 3.0) * (2.0 / 3.0));
    for (int w = 0; w < 3; ++w) CHECK(std::abs(counts[w] - want) < 4.0 * se);
}

TEST_CASE("the aligned branch wins most of the time at high SNR") {
    auto cfg = basic();
    // At negligible noise the error rate is set by the aligned-sum gain
    // (Sum beta)^2 against unaligned branch energy, roughly exp(-N G^2/m)
    // per competitor; N = 8 puts it well under the asserted tenth.
    cfg.n = 8;
    cfg.es = 100.0;
    cfg.k = 0.0;
    ChannelSampler sampler(cfg.channel);
    ChannelMatrix h(cfg.n, cfg.n_r);
    Philox rng(78, 0);
    const int trials = 2000;
    int errors = 0;
    for (int t = 0; t < trials; ++t) {
        sampler.fill(h, rng);
        errors += greedy_detect(received_energies(h, 0, cfg, std::nullopt, rng)) != 0;
    }
    CHECK(errors < trials / 10);
}
