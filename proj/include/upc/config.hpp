#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace upc {

enum class Reuse { FR1, FR3 };

/// Metric columns are either used as-is or rescaled to [0,1] over the grid
/// before the cost function is applied.
enum class Normalization { Raw, MinMax };

std::string to_string(Reuse reuse);
std::string to_string(Normalization normalization);
Reuse parse_reuse(std::string_view text);
Normalization parse_normalization(std::string_view text);

/// Weights of J = a*rate + b*edge_coverage + c*power. Defaults equal the
/// first shipped preset.
struct WeightSet {
    double a = 1.0;
    double b = 1.0;
    double c = -0.22;

    bool operator==(const WeightSet&) const = default;
};

/// Reported for every rejected configuration. `key()` names the offending
/// setting (empty for pure syntax errors), `line()` is 1-based or 0 when the
/// error did not come from a file.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, std::string message, int line = 0);

    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

struct SimConfig {
    double cell_radius_m = 500.0;
    double alpha = 3.0;
    double epsilon = 0.5;
    Reuse reuse = Reuse::FR1;
    double target_sinr_db = 0.0;
    std::int64_t n_trials = 10000;
    std::int64_t n_distance_bins = 30;
    std::uint64_t master_seed = 20140601;
    double max_tx_power_dbm = 43.0;
    double noise_psd_dbm_hz = -174.0;
    std::int64_t subcarriers_per_prb = 12;
    double subcarrier_spacing_hz = 15000.0;
    double edge_band_fraction = 0.1;
    WeightSet weights{};
    std::vector<double> epsilon_grid = default_epsilon_grid();
    Normalization normalization = Normalization::MinMax;
    bool bandwidth_penalty = false;

    double target_sinr_linear() const;

    static std::vector<double> default_epsilon_grid();

    bool operator==(const SimConfig&) const = default;
};

/// Throws ConfigError naming the first violated invariant.
void validate(const SimConfig& config);

/// Parses flat `key = value` text (`#` starts a comment) over the defaults.
SimConfig parse_config(std::string_view text);
SimConfig parse_config(std::string_view text, SimConfig base);

using Override = std::pair<std::string, std::string>;

/// Splits `key=value`; throws ConfigError when there is no '='.
Override split_override(std::string_view assignment);

SimConfig merge_overrides(SimConfig base, const std::vector<Override>& overrides);
SimConfig merge_overrides(SimConfig base, const std::vector<std::string>& assignments);

/// Canonical file form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const SimConfig& config);

/// All keys accepted by the file format, in serialization order.
const std::vector<std::string>& config_keys();

/// Accepts `start:stop:step` or a comma-separated list.
std::vector<double> parse_epsilon_grid(std::string_view text);

}  // namespace upc
