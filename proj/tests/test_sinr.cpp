#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "upc/sinr.hpp"

using namespace upc;

TEST_CASE("noise per PRB from the thermal floor")
{
    const SimConfig defaults;
    // -174 + 10 log10(12 * 15 kHz), then relative to 43 dBm.
    CHECK(noise_per_prb_dbm(defaults) == doctest::Approx(-121.44727494896694).epsilon(1e-12));
    CHECK(noise_variance_norm(defaults).sigma2_norm ==
          doctest::Approx(3.591472166943992e-17).epsilon(1e-10));

    SimConfig doubled = defaults;
    doubled.subcarriers_per_prb = 24;
    CHECK(noise_per_prb_dbm(doubled) - noise_per_prb_dbm(defaults) ==
          doctest::Approx(3.010299956639812).epsilon(1e-12));

    SimConfig quiet = defaults;
    quiet.noise_psd_dbm_hz = -HUGE_VAL;
    CHECK(noise_variance_norm(quiet).sigma2_norm == 0.0);
}

TEST_CASE("single-link SNR")
{
    const UserDrop drop{500.0, {}};
    const FadingDraw fading{1.0, {}};
    const PowerControl pc{0.7, 3.0, 500.0, SinrMode::Normalized};
    const auto s = instantaneous_sinr(drop, fading, pc, {1.0});
    CHECK(s.eta == doctest::Approx(std::pow(500.0, -3.0)).epsilon(1e-14));
    CHECK(s.interference == 0.0);
}

TEST_CASE("hand-evaluated SINR values")
{
    // Normalized: R = 4, r = 2, alpha = 2, eps = 0.5 -> (1/2)^1 * 2^-2.
    {
        const UserDrop drop{2.0, {}};
        const PowerControl pc{0.5, 2.0, 4.0, SinrMode::Normalized};
        CHECK(instantaneous_sinr(drop, {1.0, {}}, pc, {1.0}).signal ==
              doctest::Approx(0.125).epsilon(1e-15));
        // r = 2 lies outside a cell of radius 1.
        const PowerControl small{0.5, 2.0, 1.0, SinrMode::Normalized};
        CHECK_THROWS_AS(instantaneous_sinr(drop, {1.0, {}}, small, {1.0}), std::invalid_argument);
    }
    // Raw: 2^(2 * -0.5) = 0.5 over (0.1875 + 4^-2 * 1^1) = 2.
    {
        const UserDrop drop{2.0, {{1.0, 4.0}}};
        const FadingDraw fading{1.0, {1.0}};
        const PowerControl pc{0.5, 2.0, 1.0, SinrMode::Raw};
        const auto s = instantaneous_sinr(drop, fading, pc, {0.1875});
        CHECK(s.signal == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(s.interference == doctest::Approx(0.0625).epsilon(1e-15));
        CHECK(s.eta == doctest::Approx(2.0).epsilon(1e-14));
    }
    {
        const UserDrop drop{2.0, {{1.0, 4.0}}};
        const PowerControl pc{0.5, 2.0, 1.0, SinrMode::Raw};
        CHECK_THROWS_AS(instantaneous_sinr(drop, {1.0, {}}, pc, {0.0}), std::invalid_argument);
    }
}

TEST_CASE("conditional coverage closed form")
{
    const UserDrop drop{500.0, {{250.0, 1000.0}}};
    const PowerControl raw{0.0, 3.0, 500.0, SinrMode::Raw};
    // 1 / (1 + (500/1000)^3)
    CHECK(conditional_coverage(drop, raw, {0.0}, 1.0) == doctest::Approx(0.888889).epsilon(1e-6));
    CHECK(conditional_coverage(drop, raw, {0.0}, 1e-300) == doctest::Approx(1.0));
    CHECK(conditional_coverage({123.0, {}}, raw, {0.0}, 10.0) == 1.0);
    const PowerControl norm{0.3, 3.0, 500.0, SinrMode::Normalized};
    CHECK(conditional_coverage({123.0, {}}, norm, {0.0}, 10.0) == 1.0);
}

namespace {

UserDrop random_drop(std::mt19937_64& gen, std::size_t n_interferers, double radius)
{
    std::uniform_real_distribution<double> u(0.01, 1.0);
    UserDrop drop{radius * u(gen), {}};
    for (std::size_t i = 0; i < n_interferers; ++i) {
        drop.interferers.push_back({radius * u(gen), radius * (1.0 + 4.0 * u(gen))});
    }
    return drop;
}

}  // namespace

TEST_CASE("property: SINR monotone in gains and noise")
{
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto drop = random_drop(gen, 6, 500.0);
        FadingDraw f{u(gen), {}};
        for (std::size_t i = 0; i < 6; ++i) {
            f.h.push_back(u(gen));
        }
        const PowerControl pc{u(gen) / 3.0, 3.0, 500.0, SinrMode::Normalized};
        const NoiseModel noise{1e-12};
        const double base = instantaneous_sinr(drop, f, pc, noise).eta;

        auto more_g = f;
        more_g.g *= 1.5;
        CHECK(instantaneous_sinr(drop, more_g, pc, noise).eta > base);

        auto more_h = f;
        more_h.h[static_cast<std::size_t>(trial % 6)] *= 1.5;
        CHECK(instantaneous_sinr(drop, more_h, pc, noise).eta < base);

        CHECK(instantaneous_sinr(drop, f, pc, {2e-12}).eta < base);
    }
}

TEST_CASE("property: scale invariance without noise")
{
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto drop = random_drop(gen, 18, 500.0);
        FadingDraw f{u(gen), std::vector<double>(18)};
        for (auto& h : f.h) {
            h = u(gen);
        }
        const double eps = u(gen) / 10.0;
        const double c = u(gen);
        UserDrop scaled = drop;
        scaled.r *= c;
        for (auto& link : scaled.interferers) {
            link.r *= c;
            link.d *= c;
        }
        const PowerControl pc{eps, 3.5, 500.0, SinrMode::Normalized};
        const PowerControl pc_scaled{eps, 3.5, 500.0 * c, SinrMode::Normalized};
        CHECK(instantaneous_sinr(scaled, f, pc_scaled, {0.0}).eta ==
              doctest::Approx(instantaneous_sinr(drop, f, pc, {0.0}).eta).epsilon(1e-10));
    }
}

TEST_CASE("full compensation equalizes received power")
{
    const PowerControl pc{1.0, 3.0, 500.0, SinrMode::Normalized};
    for (double r = 5.0; r <= 500.0; r += 35.0) {
        const auto s = instantaneous_sinr({r, {}}, {1.0, {}}, pc, {1.0});
        CHECK(s.signal == doctest::Approx(std::pow(500.0, -3.0)).epsilon(1e-12));
    }
}

TEST_CASE("oracle agrees with fading Monte Carlo for fixed drops")
{
    std::mt19937_64 gen(17);
    RandomStream rng(404);
    const NoiseModel noise{3.591472166943992e-17};
    for (int k = 0; k < 5; ++k) {
        const auto drop = random_drop(gen, 18, 500.0);
        const PowerControl pc{0.25 * k, 3.0, 500.0, SinrMode::Normalized};
        const double target = 1.0;
        const int n = 100000;
        int hits = 0;
        FadingDraw f;
        for (int t = 0; t < n; ++t) {
            sample_fading(rng, 18, f);
            hits += instantaneous_sinr(drop, f, pc, noise).eta > target ? 1 : 0;
        }
        const double p_hat = hits / static_cast<double>(n);
        const double p = conditional_coverage(drop, pc, noise, target);
        const double se = std::sqrt(p * (1.0 - p) / n);
        CAPTURE(k);
        CHECK(std::abs(p_hat - p) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("property: removing an interferer never lowers coverage")
{
    std::mt19937_64 gen(23);
    const PowerControl pc{0.5, 3.0, 500.0, SinrMode::Normalized};
    for (int trial = 0; trial < 200; ++trial) {
        auto drop = random_drop(gen, 18, 500.0);
        double prev = conditional_coverage(drop, pc, {1e-15}, 1.0);
        while (!drop.interferers.empty()) {
            drop.interferers.erase(drop.interferers.begin() +
                                   static_cast<long>(gen() % drop.interferers.size()));
            const double next = conditional_coverage(drop, pc, {1e-15}, 1.0);
            CHECK(next >= prev);
            prev = next;
        }
    }
}
