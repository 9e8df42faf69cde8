#include "upc/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include "upc/format.hpp"

namespace upc {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view text)
{
    text = trim(text);
    double value = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (!text.empty() && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError(key, key + ": expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

template <typename Int>
Int parse_integer(const std::string& key, std::string_view text)
{
    text = trim(text);
    Int value = 0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError(key, key + ": expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(const std::string& key, std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw ConfigError(key, key + ": expected true/false, got '" + std::string(text) + "'");
}

struct Field {
    std::function<void(SimConfig&, std::string_view)> set;
    std::function<std::string(const SimConfig&)> get;
};

std::string join_grid(const std::vector<double>& grid)
{
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += format_exact(grid[i]);
    }
    return out;
}

const std::vector<std::pair<std::string, Field>>& field_table()
{
    static const std::vector<std::pair<std::string, Field>> table = [] {
        std::vector<std::pair<std::string, Field>> t;
        auto real = [&t](std::string key, double SimConfig::*member) {
            t.emplace_back(key, Field{
                [key, member](SimConfig& c, std::string_view v) { c.*member = parse_double(key, v); },
                [member](const SimConfig& c) { return format_exact(c.*member); }});
        };
        auto integer = [&t](std::string key, std::int64_t SimConfig::*member) {
            t.emplace_back(key, Field{
                [key, member](SimConfig& c, std::string_view v) {
                    c.*member = parse_integer<std::int64_t>(key, v);
                },
                [member](const SimConfig& c) { return std::to_string(c.*member); }});
        };
        auto weight = [&t](std::string key, double WeightSet::*member) {
            t.emplace_back(key, Field{
                [key, member](SimConfig& c, std::string_view v) {
                    c.weights.*member = parse_double(key, v);
                },
                [member](const SimConfig& c) { return format_exact(c.weights.*member); }});
        };

        real("cell_radius_m", &SimConfig::cell_radius_m);
        real("alpha", &SimConfig::alpha);
        real("epsilon", &SimConfig::epsilon);
        t.emplace_back("reuse", Field{
            [](SimConfig& c, std::string_view v) { c.reuse = parse_reuse(trim(v)); },
            [](const SimConfig& c) { return to_string(c.reuse); }});
        real("target_sinr_db", &SimConfig::target_sinr_db);
        integer("n_trials", &SimConfig::n_trials);
        integer("n_distance_bins", &SimConfig::n_distance_bins);
        t.emplace_back("master_seed", Field{
            [](SimConfig& c, std::string_view v) {
                c.master_seed = parse_integer<std::uint64_t>("master_seed", v);
            },
            [](const SimConfig& c) { return std::to_string(c.master_seed); }});
        real("max_tx_power_dbm", &SimConfig::max_tx_power_dbm);
        real("noise_psd_dbm_hz", &SimConfig::noise_psd_dbm_hz);
        integer("subcarriers_per_prb", &SimConfig::subcarriers_per_prb);
        real("subcarrier_spacing_hz", &SimConfig::subcarrier_spacing_hz);
        real("edge_band_fraction", &SimConfig::edge_band_fraction);
        weight("weights.a", &WeightSet::a);
        weight("weights.b", &WeightSet::b);
        weight("weights.c", &WeightSet::c);
        t.emplace_back("epsilon_grid", Field{
            [](SimConfig& c, std::string_view v) { c.epsilon_grid = parse_epsilon_grid(v); },
            [](const SimConfig& c) { return join_grid(c.epsilon_grid); }});
        t.emplace_back("normalization", Field{
            [](SimConfig& c, std::string_view v) { c.normalization = parse_normalization(trim(v)); },
            [](const SimConfig& c) { return to_string(c.normalization); }});
        t.emplace_back("bandwidth_penalty", Field{
            [](SimConfig& c, std::string_view v) {
                c.bandwidth_penalty = parse_bool("bandwidth_penalty", v);
            },
            [](const SimConfig& c) { return std::string(c.bandwidth_penalty ? "true" : "false"); }});
        return t;
    }();
    return table;
}

const Field& lookup(const std::string& key, int line)
{
    for (const auto& [name, field] : field_table()) {
        if (name == key) {
            return field;
        }
    }
    throw ConfigError(key, "unknown key '" + key + "'", line);
}

void require(bool ok, const char* key, const std::string& message)
{
    if (!ok) {
        throw ConfigError(key, message);
    }
}

}  // namespace

ConfigError::ConfigError(std::string key, std::string message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      key_(std::move(key)),
      line_(line)
{
}

std::string to_string(Reuse reuse)
{
    return reuse == Reuse::FR1 ? "fr1" : "fr3";
}

std::string to_string(Normalization normalization)
{
    return normalization == Normalization::Raw ? "raw" : "minmax";
}

Reuse parse_reuse(std::string_view text)
{
    if (text == "fr1" || text == "FR1" || text == "1") {
        return Reuse::FR1;
    }
    if (text == "fr3" || text == "FR3" || text == "3") {
        return Reuse::FR3;
    }
    throw ConfigError("reuse", "reuse must be fr1 or fr3, got '" + std::string(text) + "'");
}

Normalization parse_normalization(std::string_view text)
{
    if (text == "raw") {
        return Normalization::Raw;
    }
    if (text == "minmax") {
        return Normalization::MinMax;
    }
    throw ConfigError("normalization",
                      "normalization must be raw or minmax, got '" + std::string(text) + "'");
}

double SimConfig::target_sinr_linear() const
{
    return std::pow(10.0, target_sinr_db / 10.0);
}

std::vector<double> SimConfig::default_epsilon_grid()
{
    return parse_epsilon_grid("0:1:0.05");
}

std::vector<double> parse_epsilon_grid(std::string_view text)
{
    const std::string key = "epsilon_grid";
    text = trim(text);
    std::vector<double> grid;
    if (text.empty()) {
        return grid;
    }
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::size_t pos = 0;
        while (true) {
            const auto next = text.find(':', pos);
            parts.push_back(parse_double(key, text.substr(pos, next - pos)));
            if (next == std::string_view::npos) {
                break;
            }
            pos = next + 1;
        }
        if (parts.size() != 3) {
            throw ConfigError(key, "epsilon_grid range must be start:stop:step");
        }
        const double start = parts[0];
        const double stop = parts[1];
        const double step = parts[2];
        if (!(step > 0.0) || stop < start) {
            throw ConfigError(key, "epsilon_grid range needs step > 0 and stop >= start");
        }
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        grid.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            // Snap to 12 decimals so 0:1:0.05 yields the literal decimals 0.15, 0.35, ...
            grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
        return grid;
    }
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(',', pos);
        grid.push_back(parse_double(key, text.substr(pos, next - pos)));
        if (next == std::string_view::npos) {
            break;
        }
        pos = next + 1;
    }
    return grid;
}

void validate(const SimConfig& c)
{
    require(std::isfinite(c.cell_radius_m) && c.cell_radius_m > 0.0, "cell_radius_m",
            "cell_radius_m must be positive");
    require(std::isfinite(c.alpha) && c.alpha >= 2.0, "alpha", "alpha must be >= 2");
    require(c.epsilon >= 0.0 && c.epsilon <= 1.0, "epsilon", "epsilon must lie in [0,1]");
    require(std::isfinite(c.target_sinr_db), "target_sinr_db", "target_sinr_db must be finite");
    require(c.n_trials >= 1, "n_trials", "n_trials must be >= 1");
    require(c.n_distance_bins >= 1, "n_distance_bins", "n_distance_bins must be >= 1");
    require(std::isfinite(c.max_tx_power_dbm), "max_tx_power_dbm",
            "max_tx_power_dbm must be finite");
    require(!std::isnan(c.noise_psd_dbm_hz) && c.noise_psd_dbm_hz != HUGE_VAL, "noise_psd_dbm_hz",
            "noise_psd_dbm_hz must be finite or -inf");
    require(c.subcarriers_per_prb >= 1, "subcarriers_per_prb", "subcarriers_per_prb must be >= 1");
    require(std::isfinite(c.subcarrier_spacing_hz) && c.subcarrier_spacing_hz > 0.0,
            "subcarrier_spacing_hz", "subcarrier_spacing_hz must be positive");
    require(c.edge_band_fraction > 0.0 && c.edge_band_fraction < 1.0, "edge_band_fraction",
            "edge_band_fraction must lie in (0,1)");
    require(std::isfinite(c.weights.a) && c.weights.a > 0.0, "weights.a", "a must be positive");
    require(std::isfinite(c.weights.b) && c.weights.b > 0.0, "weights.b", "b must be positive");
    require(std::isfinite(c.weights.c) && c.weights.c < 0.0, "weights.c", "c must be negative");
    require(!c.epsilon_grid.empty(), "epsilon_grid", "epsilon_grid must not be empty");
    for (std::size_t i = 0; i < c.epsilon_grid.size(); ++i) {
        const double e = c.epsilon_grid[i];
        require(e >= 0.0 && e <= 1.0, "epsilon_grid", "epsilon_grid entries must lie in [0,1]");
        require(i == 0 || e > c.epsilon_grid[i - 1], "epsilon_grid",
                "epsilon_grid must be strictly increasing");
    }
}

SimConfig parse_config(std::string_view text)
{
    return parse_config(text, SimConfig{});
}

SimConfig parse_config(std::string_view text, SimConfig base)
{
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "syntax error: expected 'key = value'", line_no);
        }
        const std::string key(trim(line.substr(0, eq)));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("", "syntax error: missing key", line_no);
        }
        try {
            lookup(key, line_no).set(base, value);
        } catch (const ConfigError& e) {
            if (e.line() > 0) {
                throw;
            }
            throw ConfigError(e.key(), e.what(), line_no);
        }
    }
    validate(base);
    return base;
}

Override split_override(std::string_view assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(std::string(trim(assignment)), "override must be key=value");
    }
    return {std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1)))};
}

SimConfig merge_overrides(SimConfig base, const std::vector<Override>& overrides)
{
    for (const auto& [key, value] : overrides) {
        lookup(key, 0).set(base, value);
    }
    validate(base);
    return base;
}

SimConfig merge_overrides(SimConfig base, const std::vector<std::string>& assignments)
{
    std::vector<Override> overrides;
    overrides.reserve(assignments.size());
    for (const auto& a : assignments) {
        overrides.push_back(split_override(a));
    }
    return merge_overrides(std::move(base), overrides);
}

std::string serialize_config(const SimConfig& config)
{
    std::string out;
    for (const auto& [key, field] : field_table()) {
        out += key;
        out += " = ";
        out += field.get(config);
        out += '\n';
    }
    return out;
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& entry : field_table()) {
            k.push_back(entry.first);
        }
        return k;
    }();
    return keys;
}

}  // namespace upc
