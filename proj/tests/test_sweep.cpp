#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "upc/sweep.hpp"

using namespace upc;

namespace {

SweepTable quick_table(std::vector<double> grid, std::int64_t trials = 4000)
{
    SimConfig c;
    c.n_trials = trials;
    c.epsilon_grid = std::move(grid);
    return sweep_epsilon(c, Reuse::FR1);
}

}  // namespace

TEST_CASE("cost is the weighted sum")
{
    const WeightSet unit{1.0, 1.0, -1.0};
    const auto zero = cost(0.0, 0.0, 0.0, {2.0, 3.0, -4.0});
    CHECK(zero.j == 0.0);
    const auto c = cost(1.2, 0.8, 0.5, unit);
    CHECK(c.j == doctest::Approx(1.5));
    CHECK(c.rate_term == 1.2);
    CHECK(c.edge_term == 0.8);
    CHECK(c.power_term == -0.5);
    CHECK(c.j == c.rate_term + c.edge_term + c.power_term);
    const auto doubled = cost(1.2, 0.8, 0.5, {2.0, 2.0, -2.0});
    CHECK(doubled.j == doctest::Approx(2.0 * c.j));
}

TEST_CASE("sweep table columns")
{
    const auto ends = quick_table({0.0, 1.0});
    REQUIRE(ends.rows.size() == 2);
    CHECK(ends.rows[0].p_avg == 1.0);
    CHECK(ends.rows[1].p_avg == doctest::Approx(2.0 / 5.0));

    const auto t = quick_table({0.0, 0.25, 0.5, 0.75, 1.0}, 10000);
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const auto& prev = t.rows[i - 1];
        const auto& row = t.rows[i];
        CHECK(row.avg_rate_nats.value < prev.avg_rate_nats.value);
        CHECK(row.edge_coverage.value >=
              prev.edge_coverage.value -
                  2.0 * std::max(row.edge_coverage.std_error, prev.edge_coverage.std_error));
        CHECK(std::abs(row.p_avg_mc.value - row.p_avg) <= 3.0 * row.p_avg_mc.std_error);
    }
}

TEST_CASE("min-max normalization")
{
    auto t = quick_table({0.0, 0.5, 1.0});
    const auto inputs = cost_inputs(t);
    CHECK(inputs.front().rate == 1.0);
    CHECK(inputs.back().rate == 0.0);
    CHECK(inputs.front().power == 1.0);
    CHECK(inputs.back().power == 0.0);
    CHECK(inputs.back().edge_coverage == 1.0);

    t.normalization = Normalization::Raw;
    const auto raw = cost_inputs(t);
    CHECK(raw[1].power == t.rows[1].p_avg);
    CHECK(raw[1].rate == t.rows[1].avg_rate_nats.value);

    const auto single = quick_table({0.4}, 200);
    CHECK(cost_inputs(single).front().rate == 0.0);
}

TEST_CASE("select_epsilon")
{
    CHECK_THROWS_AS(select_epsilon(SweepTable{}, WeightSet{}), std::invalid_argument);

    const auto single = quick_table({0.35}, 500);
    CHECK(select_epsilon(single, WeightSet{}).epsilon == 0.35);

    const auto t = quick_table(SimConfig::default_epsilon_grid(), 3000);
    CHECK(select_epsilon(t, {1e-9, 1e-9, -1.0}).epsilon == 1.0);
    // Boundary sanity: rate-only picks the rate maximizer, edge-only the edge maximizer.
    CHECK(select_epsilon(t, {1.0, 1e-9, -1e-9}).epsilon == 0.0);
    CHECK(select_epsilon(t, {1e-9, 1.0, -1e-9}).epsilon == 1.0);
}

TEST_CASE("ties go to the larger epsilon")
{
    SweepTable t;
    t.normalization = Normalization::Raw;
    for (const double eps : {0.2, 0.4, 0.6}) {
        MetricsRow row;
        row.epsilon = eps;
        row.p_avg = 0.5;
        row.edge_coverage = {0.5, 0.0};
        row.avg_rate_nats = {1.0, 0.0};
        t.rows.push_back(row);
    }
    CHECK(select_epsilon(t, WeightSet{}).epsilon == 0.6);
}

TEST_CASE("property: selection invariant under positive rescaling of weights")
{
    const auto t = quick_table(SimConfig::default_epsilon_grid(), 3000);
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const WeightSet w{u(gen), u(gen), -u(gen)};
        const double k = u(gen) * 10.0;
        const auto a = select_epsilon(t, w);
        const auto b = select_epsilon(t, {k * w.a, k * w.b, k * w.c});
        CHECK(a.epsilon == b.epsilon);

        const auto inputs = cost_inputs(t);
        std::size_t idx = 0;
        while (t.rows[idx].epsilon != a.epsilon) {
            ++idx;
        }
        const auto again = cost(inputs[idx].rate, inputs[idx].edge_coverage, inputs[idx].power, w);
        CHECK(a.j == again.j);
        CHECK(a.j == a.rate_term + a.edge_term + a.power_term);
    }
}

TEST_CASE("weight presets are valid and pick the middle of the grid")
{
    SimConfig c;
    const auto t = sweep_epsilon(c, Reuse::FR1);
    for (const auto& w : weight_presets()) {
        CHECK(w.a > 0.0);
        CHECK(w.b > 0.0);
        CHECK(w.c < 0.0);
        const double eps = select_epsilon(t, w).epsilon;
        CHECK(eps >= 0.45 - 1e-12);
        CHECK(eps <= 0.55 + 1e-12);
    }
    CHECK(c.weights == weight_presets()[0]);
}
