#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "upc/config.hpp"

using namespace upc;

namespace {

std::string error_key(auto&& fn)
{
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("empty text yields table defaults")
{
    const auto c = parse_config("");
    CHECK(c.cell_radius_m == 500.0);
    CHECK(c.alpha == 3.0);
    CHECK(c.target_sinr_db == 0.0);
    CHECK(c.max_tx_power_dbm == 43.0);
    CHECK(c.noise_psd_dbm_hz == -174.0);
    CHECK(c.subcarriers_per_prb == 12);
    CHECK(c.subcarrier_spacing_hz == 15000.0);
    CHECK(c.edge_band_fraction == 0.1);
    CHECK(c.epsilon_grid.size() == 21);
    CHECK(c == SimConfig{});
}

TEST_CASE("file values overlay defaults")
{
    const auto c = parse_config(R"(
# comment line
epsilon = 0.0
reuse = fr3      # trailing comment
weights.a = 2.5
epsilon_grid = 0, 0.5, 1
)");
    CHECK(c.epsilon == 0.0);
    CHECK(c.reuse == Reuse::FR3);
    CHECK(c.weights.a == 2.5);
    CHECK(c.epsilon_grid == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(c.alpha == 3.0);
}

TEST_CASE("invariant violations name the key")
{
    try {
        parse_config("alpha = 1.5");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "alpha");
        CHECK(std::string(e.what()).find("alpha must be >= 2") != std::string::npos);
    }

    const std::vector<std::pair<std::string, std::string>> bad{
        {"cell_radius_m = 0", "cell_radius_m"},
        {"cell_radius_m = -3", "cell_radius_m"},
        {"epsilon = 1.01", "epsilon"},
        {"epsilon = -0.1", "epsilon"},
        {"n_trials = 0", "n_trials"},
        {"n_distance_bins = 0", "n_distance_bins"},
        {"edge_band_fraction = 1", "edge_band_fraction"},
        {"edge_band_fraction = 0", "edge_band_fraction"},
        {"subcarrier_spacing_hz = 0", "subcarrier_spacing_hz"},
        {"subcarriers_per_prb = 0", "subcarriers_per_prb"},
        {"weights.a = 0", "weights.a"},
        {"weights.b = -1", "weights.b"},
        {"weights.c = 0.5", "weights.c"},
        {"epsilon_grid = 0, 0.5, 0.5", "epsilon_grid"},
        {"epsilon_grid = 0.5, 0.2", "epsilon_grid"},
        {"epsilon_grid = 0:1.2:0.1", "epsilon_grid"},
        {"reuse = fr2", "reuse"},
        {"normalization = zscore", "normalization"},
        {"alpha = abc", "alpha"},
        {"n_trials = 1.5", "n_trials"},
        {"master_seed = -1", "master_seed"},
        {"noise_psd_dbm_hz = inf", "noise_psd_dbm_hz"},
        {"bandwidth_penalty = maybe", "bandwidth_penalty"},
    };
    for (const auto& [text, key] : bad) {
        CAPTURE(text);
        CHECK(error_key([&] { parse_config(text); }) == key);
    }
}

TEST_CASE("syntax errors carry the line number")
{
    try {
        parse_config("alpha = 3\n\nthis line has no equals\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try {
        parse_config("alpha = 3\nbogus_key = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "bogus_key");
        CHECK(e.line() == 2);
    }
    try {
        parse_config("\n\nalpha = x\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "alpha");
        CHECK(e.line() == 3);
    }
}

TEST_CASE("noise PSD accepts -inf for the interference-limited case")
{
    const auto c = parse_config("noise_psd_dbm_hz = -inf");
    CHECK(std::isinf(c.noise_psd_dbm_hz));
    CHECK(c.noise_psd_dbm_hz < 0.0);
}

TEST_CASE("merge_overrides")
{
    const SimConfig base;
    const auto merged = merge_overrides(base, std::vector<std::string>{"epsilon=0.5"});
    CHECK(merged.epsilon == 0.5);
    CHECK(merge_overrides(base, std::vector<std::string>{}) == base);

    SimConfig expected = base;
    expected.alpha = 4.0;
    expected.reuse = Reuse::FR3;
    CHECK(merge_overrides(base, std::vector<std::string>{"alpha=4", "reuse = fr3"}) == expected);

    CHECK(error_key([&] { merge_overrides(base, std::vector<std::string>{"weights.c=0.5"}); }) ==
          "weights.c");
    CHECK(error_key([&] { merge_overrides(base, std::vector<std::string>{"nope=1"}); }) == "nope");
    CHECK(error_key([&] { merge_overrides(base, std::vector<std::string>{"alpha"}); }) == "alpha");
}

TEST_CASE("epsilon grid ranges snap to decimals")
{
    const auto grid = parse_epsilon_grid("0:1:0.05");
    REQUIRE(grid.size() == 21);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
    CHECK(grid[3] == 0.15);
    CHECK(grid[9] == 0.45);
    CHECK(grid[11] == 0.55);
    CHECK(parse_epsilon_grid("0:1:0.25") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
}

TEST_CASE("property: serialize then parse round-trips")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        SimConfig c;
        c.cell_radius_m = 10.0 + 1000.0 * unit(gen);
        c.alpha = 2.0 + 3.0 * unit(gen);
        c.epsilon = unit(gen);
        c.reuse = unit(gen) < 0.5 ? Reuse::FR1 : Reuse::FR3;
        c.target_sinr_db = -10.0 + 20.0 * unit(gen);
        c.n_trials = 1 + static_cast<std::int64_t>(1e6 * unit(gen));
        c.n_distance_bins = 1 + static_cast<std::int64_t>(100 * unit(gen));
        c.master_seed = gen();
        c.max_tx_power_dbm = 20.0 + 30.0 * unit(gen);
        c.noise_psd_dbm_hz = unit(gen) < 0.1 ? -HUGE_VAL : -180.0 + 20.0 * unit(gen);
        c.subcarriers_per_prb = 1 + static_cast<std::int64_t>(24 * unit(gen));
        c.subcarrier_spacing_hz = 1000.0 + 30000.0 * unit(gen);
        c.edge_band_fraction = 0.01 + 0.98 * unit(gen);
        c.weights = {0.01 + unit(gen), 0.01 + unit(gen), -0.01 - unit(gen)};
        c.epsilon_grid.clear();
        double e = 0.0;
        while (true) {
            e += 0.001 + 0.3 * unit(gen);
            if (e > 1.0) {
                break;
            }
            c.epsilon_grid.push_back(e);
        }
        if (c.epsilon_grid.empty()) {
            c.epsilon_grid.push_back(unit(gen));
        }
        c.normalization = unit(gen) < 0.5 ? Normalization::Raw : Normalization::MinMax;
        c.bandwidth_penalty = unit(gen) < 0.5;
        validate(c);

        const auto text = serialize_config(c);
        CAPTURE(text);
        CHECK(parse_config(text) == c);
        CHECK(merge_overrides(c, std::vector<Override>{}) == c);
    }
}

TEST_CASE("every key appears in the serialized form")
{
    const auto text = serialize_config(SimConfig{});
    for (const auto& key : config_keys()) {
        CHECK(text.find(key + " = ") != std::string::npos);
    }
}
