#include "upc/sweep.hpp"

#include <algorithm>
#include <stdexcept>

namespace upc {

CostBreakdown cost(double rate, double edge_coverage, double power, const WeightSet& w)
{
    CostBreakdown out;
    out.rate_term = w.a * rate;
    out.edge_term = w.b * edge_coverage;
    out.power_term = w.c * power;
    out.j = out.rate_term + out.edge_term + out.power_term;
    return out;
}

SweepTable sweep_epsilon(const SimConfig& config, Reuse reuse, Execution exec)
{
    validate(config);
    SweepTable table;
    table.grid = config.epsilon_grid;
    table.normalization = config.normalization;
    table.reuse = reuse;
    table.alpha = config.alpha;

    const auto pkey = power_key(config.master_seed);
    const auto ekey = edge_key(config.master_seed);
    const auto rkey = rate_key(config.master_seed);
    for (const double eps : config.epsilon_grid) {
        MetricsRow row;
        row.epsilon = eps;
        row.p_avg = avg_tx_power_closed(eps, config.alpha);
        row.p_avg_mc =
            avg_tx_power_mc(eps, config.alpha, config.cell_radius_m, config.n_trials, pkey, exec);
        row.edge_coverage = edge_coverage(config, eps, reuse, ekey, exec);
        row.avg_rate_nats = avg_rate(config, eps, reuse, rkey, exec);
        table.rows.push_back(row);
    }
    return table;
}

namespace {

void min_max(std::vector<double>& column)
{
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    const double min = *lo;
    const double span = *hi - *lo;
    for (auto& v : column) {
        v = span > 0.0 ? (v - min) / span : 0.0;
    }
}

}  // namespace

std::vector<CostInputs> cost_inputs(const SweepTable& table)
{
    std::vector<double> rate, edge, power;
    for (const auto& row : table.rows) {
        rate.push_back(row.avg_rate_nats.value);
        edge.push_back(row.edge_coverage.value);
        power.push_back(row.p_avg);
    }
    if (table.normalization == Normalization::MinMax && !table.rows.empty()) {
        min_max(rate);
        min_max(edge);
        min_max(power);
    }
    std::vector<CostInputs> out(table.rows.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = {rate[i], edge[i], power[i]};
    }
    return out;
}

std::vector<CostBreakdown> cost_curve(const SweepTable& table, const WeightSet& w)
{
    const auto inputs = cost_inputs(table);
    std::vector<CostBreakdown> out;
    out.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        auto c = cost(inputs[i].rate, inputs[i].edge_coverage, inputs[i].power, w);
        c.epsilon = table.rows[i].epsilon;
        out.push_back(c);
    }
    return out;
}

CostBreakdown select_epsilon(const SweepTable& table, const WeightSet& w)
{
    if (table.rows.empty()) {
        throw std::invalid_argument("select_epsilon: empty sweep table");
    }
    const auto curve = cost_curve(table, w);
    auto best = curve.front();
    for (const auto& c : curve) {
        if (c.j > best.j || (c.j == best.j && c.epsilon > best.epsilon)) {
            best = c;
        }
    }
    return best;
}

const std::array<WeightSet, 3>& weight_presets()
{
    // Calibrated on FR1, alpha = 3, T = 0 dB, minmax, grid 0:1:0.05. Each
    // puts the maximum at 0.5 for master seeds 1-4 and the default seed.
    static const std::array<WeightSet, 3> presets{{
        {1.0, 1.0, -0.22},  // rate and edge coverage equal, light power cost
        {1.2, 1.0, -0.5},   // rate leaning, moderate power cost
        {2.0, 1.0, -1.6},   // rate heavy, strong power cost
    }};
    return presets;
}

}  // namespace upc
