#pragma once

#include <array>
#include <vector>

#include "upc/config.hpp"
#include "upc/metrics.hpp"

namespace upc {

struct SweepTable {
    std::vector<double> grid;
    std::vector<MetricsRow> rows;
    Normalization normalization = Normalization::MinMax;
    Reuse reuse = Reuse::FR1;
    double alpha = 3.0;
};

/// One evaluation of J with its three contributions; j == rate_term +
/// edge_term + power_term.
struct CostBreakdown {
    double epsilon = 0.0;
    double j = 0.0;
    double rate_term = 0.0;
    double edge_term = 0.0;
    double power_term = 0.0;
};

struct CostInputs {
    double rate = 0.0;
    double edge_coverage = 0.0;
    double power = 0.0;
};

CostBreakdown cost(double rate, double edge_coverage, double power, const WeightSet& w);

/// Metrics at every point of config.epsilon_grid. Power uses the closed form
/// for costing; the Monte Carlo estimate is kept alongside for checking.
SweepTable sweep_epsilon(const SimConfig& config, Reuse reuse, Execution exec = {});

/// The (rate, edge, power) triple each row contributes to J, after the
/// table's normalization. Min-max maps each column onto [0,1] over the grid; a
/// constant column maps to 0.
std::vector<CostInputs> cost_inputs(const SweepTable& table);

std::vector<CostBreakdown> cost_curve(const SweepTable& table, const WeightSet& w);

/// Grid point maximizing J; ties go to the larger epsilon. Throws
/// std::invalid_argument on an empty table.
CostBreakdown select_epsilon(const SweepTable& table, const WeightSet& w);

/// Shipped weight sets for min-max normalized metrics. See
/// docs/calibration.md for how they were chosen.
const std::array<WeightSet, 3>& weight_presets();

}  // namespace upc
