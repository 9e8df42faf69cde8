#pragma once

#include <cstdint>
#include <vector>

#include "upc/config.hpp"
#include "upc/geometry.hpp"
#include "upc/parallel.hpp"
#include "upc/random.hpp"
#include "upc/sinr.hpp"

namespace upc {

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct CoverageBin {
    double r_mid = 0.0;
    double coverage = 0.0;
    std::int64_t n = 0;
    double std_error = 0.0;  ///< sqrt(p(1-p)/n)
};

struct CoverageCurve {
    double epsilon = 0.0;
    Reuse reuse = Reuse::FR1;
    std::vector<CoverageBin> bins;
};

struct MetricsRow {
    double epsilon = 0.0;
    double p_avg = 0.0;  ///< closed form
    Estimate p_avg_mc;
    Estimate edge_coverage;
    Estimate avg_rate_nats;
};

/// Everything a coverage or rate trial needs, resolved once from a config.
/// Fields may be adjusted (e.g. an empty cochannel set) before estimation.
struct Scenario {
    CellLayout layout;
    std::vector<std::size_t> cochannel;
    Reuse reuse = Reuse::FR1;
    PowerControl pc;
    NoiseModel noise;
    double target_linear = 1.0;
    double band_inner_m = 0.0;
    double rate_scale = 1.0;
    std::int64_t n_trials = 1;
    std::int64_t n_distance_bins = 1;

    Scenario(const SimConfig& config, double epsilon, Reuse reuse);

    std::vector<double> bin_midpoints() const;
};

/// Closed-form average of (r/R)^(alpha*eps) under density 2r/R^2:
/// 2 / (alpha*eps + 2).
double avg_tx_power_closed(double epsilon, double alpha);

/// Default stream families, one per metric. They do not depend on epsilon or
/// reuse, so sweeps compare settings on common random numbers.
SeedKey power_key(std::uint64_t master_seed);
SeedKey coverage_key(std::uint64_t master_seed);
SeedKey edge_key(std::uint64_t master_seed);
SeedKey rate_key(std::uint64_t master_seed);

Estimate avg_tx_power_mc(double epsilon, double alpha, double cell_radius_m, std::int64_t n,
                         const SeedKey& key, Execution exec = {});

/// Coverage conditioned on the tagged distance, n_distance_bins midpoints over
/// (0, R]; fading is averaged exactly per drop with conditional_coverage.
CoverageCurve coverage_curve(const Scenario& scenario, const SeedKey& key, Execution exec = {});
CoverageCurve coverage_curve(const SimConfig& config, double epsilon, Reuse reuse,
                             const SeedKey& key, Execution exec = {});
CoverageCurve coverage_curve(const SimConfig& config, double epsilon, Reuse reuse,
                             Execution exec = {});

/// Coverage of users in the outer band [(1 - edge_band_fraction) R, R].
Estimate edge_coverage(const Scenario& scenario, const SeedKey& key, Execution exec = {});
Estimate edge_coverage(const SimConfig& config, double epsilon, Reuse reuse, const SeedKey& key,
                       Execution exec = {});

/// E[ln(1 + eta)] over position, interferer drops and sampled fading.
/// With bandwidth_penalty set, FR3 rates are scaled by 1/3.
Estimate avg_rate(const Scenario& scenario, const SeedKey& key, Execution exec = {});
Estimate avg_rate(const SimConfig& config, double epsilon, Reuse reuse, const SeedKey& key,
                  Execution exec = {});

/// Plain single-stream, single-threaded estimators. Same sampling laws as the
/// parallel versions but a different partition of the random numbers, so
/// agreement is statistical, not bitwise.
namespace reference {

Estimate avg_tx_power_mc(double epsilon, double alpha, double cell_radius_m, std::int64_t n,
                         RandomStream& rng);
CoverageCurve coverage_curve(const Scenario& scenario, RandomStream& rng);
Estimate edge_coverage(const Scenario& scenario, RandomStream& rng);
Estimate avg_rate(const Scenario& scenario, RandomStream& rng);

}  // namespace reference

}  // namespace upc
