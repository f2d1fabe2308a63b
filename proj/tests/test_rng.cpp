#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "rissk/rng.hpp"

using namespace rissk;

TEST_CASE("philox known-answer vectors") {
    Philox p(0);
    std::uint32_t out[4];

    const std::uint32_t zero_ctr[4] = {0, 0, 0, 0};
    const std::uint32_t zero_key[2] = {0, 0};
    p.block(zero_ctr, zero_key, out);
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);

    const std::uint32_t ones_ctr[4] = {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu};
    const std::uint32_t ones_key[2] = {0xffffffffu, 0xffffffffu};
    p.block(ones_ctr, ones_key, out);
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);

    const std::uint32_t pi_ctr[4] = {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u};
    const std::uint32_t pi_key[2] = {0xa4093822u, 0x299f31d0u};
    p.block(pi_ctr, pi_key, out);
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("philox streams are reproducible and distinct") {
    Philox a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u32();
        CHECK(va == b.next_u32());
        differs_c |= va != c.next_u32();
        differs_d |= va != d.next_u32();
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("next_u64 is two consecutive words, low first") {
    Philox a(9, 1), b(9, 1);
    for (int i = 0; i < 8; ++i) {
        const std::uint64_t lo = b.next_u32();
        const std::uint64_t hi = b.next_u32();
        CHECK(a.next_u64() == (lo | (hi << 32)));
    }
}

TEST_CASE("uniform stays inside the open unit interval with mean one half") {
    Philox rng(123, 0);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    const double se = std::sqrt(1.0 / 12.0 / n);
    CHECK(std::abs(sum / n - 0.5) < 4.0 * se);
}

TEST_CASE("normal moments") {
    Philox rng(7, 0);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("exponential mean") {
    Philox rng(11, 0);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rng.exponential(2.5);
    CHECK(std::abs(sum / n - 2.5) < 4.0 * 2.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("gamma sampler matches its first two moments") {
    struct {
        double shape, scale;
    } cases[] = {{3.7, 0.9}, {0.4, 2.0}, {1.0, 1.0}};
    int stream = 0;
    for (const auto& c : cases) {
        GammaSampler g(c.shape, c.scale);
        Philox rng(5, static_cast<std::uint64_t>(stream++));
        const int n = 400000;
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = g(rng);
            REQUIRE(x > 0.0);
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / n;
        const double var = sum2 / n - mean * mean;
        const double want_mean = c.shape * c.scale;
        const double want_var = c.shape * c.scale * c.scale;
        // se(mean) = sqrt(var/n); se(var) ~ sqrt((m4 - var^2)/n) with
        // m4 = 3(shape + 2) var^2 / shape for a gamma law.
        const double se_mean = std::sqrt(want_var / n);
        const double m4 = 3.0 * (c.shape + 2.0) / c.shape * want_var * want_var;
        const double se_var = std::sqrt((m4 - want_var * want_var) / n);
        CHECK(std::abs(mean - want_mean) < 4.0 * se_mean);
        CHECK(std::abs(var - want_var) < 4.0 * se_var);
    }
}

TEST_CASE("mix_seed separates salts") {
    CHECK(mix_seed(1, 0) == mix_seed(1, 0));
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
}
