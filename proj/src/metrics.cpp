#include "upc/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace upc {

namespace {

struct Scratch {
    UserDrop drop;
    FadingDraw fading;
};

double power_trial(double epsilon, double alpha, double radius, RandomStream& rng)
{
    return tx_power_norm(sample_radius(rng, radius), epsilon, alpha, radius);
}

double coverage_trial(const Scenario& s, double r, RandomStream& rng, Scratch& scratch)
{
    sample_drop(s.layout, s.cochannel, rng, r, scratch.drop);
    return conditional_coverage(scratch.drop, s.pc, s.noise, s.target_linear);
}

double edge_trial(const Scenario& s, RandomStream& rng, Scratch& scratch)
{
    const double r = sample_radius_band(rng, s.band_inner_m, s.layout.cell_radius_m);
    return coverage_trial(s, r, rng, scratch);
}

double rate_trial(const Scenario& s, RandomStream& rng, Scratch& scratch)
{
    sample_drop(s.layout, s.cochannel, rng, std::nullopt, scratch.drop);
    sample_fading(rng, scratch.drop.interferers.size(), scratch.fading);
    const auto sinr = instantaneous_sinr(scratch.drop, scratch.fading, s.pc, s.noise);
    return std::log1p(sinr.eta);
}

CoverageBin make_bin(double r_mid, const Moments& m)
{
    const double p = std::clamp(m.mean(), 0.0, 1.0);
    return {r_mid, p, m.n, std::sqrt(p * (1.0 - p) / static_cast<double>(m.n))};
}

template <typename Trial>
Moments run_chunk(std::int64_t n, std::int64_t chunk, const SeedKey& key, Trial&& trial)
{
    RandomStream rng(key, static_cast<std::uint64_t>(chunk));
    Scratch scratch;
    Moments m;
    const std::int64_t end = std::min(n, (chunk + 1) * kChunkSize);
    for (std::int64_t t = chunk * kChunkSize; t < end; ++t) {
        m.add(trial(rng, scratch));
    }
    return m;
}

/// trial(rng, scratch) over n trials, one stream per fixed-size chunk.
template <typename Trial>
Moments chunked(std::int64_t n, const SeedKey& key, Execution exec, Trial&& trial)
{
    return reduce(run_units<Moments>(chunk_count(n), exec, [&](std::int64_t c) {
        return run_chunk(n, c, key, trial);
    }));
}

/// Single stream, trial after trial.
template <typename Trial>
Moments sequential(std::int64_t n, RandomStream& rng, Trial&& trial)
{
    Scratch scratch;
    Moments m;
    for (std::int64_t t = 0; t < n; ++t) {
        m.add(trial(rng, scratch));
    }
    return m;
}

}  // namespace

Scenario::Scenario(const SimConfig& config, double epsilon, Reuse reuse_)
    : layout(build_layout(config.cell_radius_m)),
      cochannel(cochannel_set(layout, reuse_)),
      reuse(reuse_),
      pc{epsilon, config.alpha, config.cell_radius_m, SinrMode::Normalized},
      noise(noise_variance_norm(config)),
      target_linear(config.target_sinr_linear()),
      band_inner_m((1.0 - config.edge_band_fraction) * config.cell_radius_m),
      rate_scale(config.bandwidth_penalty && reuse_ == Reuse::FR3 ? 1.0 / 3.0 : 1.0),
      n_trials(config.n_trials),
      n_distance_bins(config.n_distance_bins)
{
}

std::vector<double> Scenario::bin_midpoints() const
{
    const auto n = static_cast<std::size_t>(n_distance_bins);
    std::vector<double> mids(n);
    for (std::size_t k = 0; k < n; ++k) {
        mids[k] = (static_cast<double>(k) + 0.5) * layout.cell_radius_m / static_cast<double>(n);
    }
    return mids;
}

double avg_tx_power_closed(double epsilon, double alpha)
{
    return 2.0 / (alpha * epsilon + 2.0);
}

SeedKey power_key(std::uint64_t master_seed)
{
    return {master_seed, tag_of("power")};
}

SeedKey coverage_key(std::uint64_t master_seed)
{
    return {master_seed, tag_of("coverage")};
}

SeedKey edge_key(std::uint64_t master_seed)
{
    return {master_seed, tag_of("edge")};
}

SeedKey rate_key(std::uint64_t master_seed)
{
    return {master_seed, tag_of("rate")};
}

Estimate avg_tx_power_mc(double epsilon, double alpha, double cell_radius_m, std::int64_t n,
                         const SeedKey& key, Execution exec)
{
    const auto m = chunked(n, key, exec, [&](RandomStream& rng, Scratch&) {
        return power_trial(epsilon, alpha, cell_radius_m, rng);
    });
    return {m.mean(), m.std_error()};
}

CoverageCurve coverage_curve(const Scenario& s, const SeedKey& key, Execution exec)
{
    const auto mids = s.bin_midpoints();
    const std::int64_t chunks = chunk_count(s.n_trials);
    const auto n_bins = static_cast<std::int64_t>(mids.size());

    // Work units are (bin, chunk) pairs; each bin has its own stream family.
    const auto parts = run_units<Moments>(n_bins * chunks, exec, [&](std::int64_t u) {
        const auto bin = static_cast<std::size_t>(u / chunks);
        const double r = mids[bin];
        return run_chunk(s.n_trials, u % chunks, key.derive(bin),
                         [&](RandomStream& rng, Scratch& scratch) {
                             return coverage_trial(s, r, rng, scratch);
                         });
    });

    CoverageCurve curve{s.pc.epsilon, s.reuse, {}};
    for (std::int64_t bin = 0; bin < n_bins; ++bin) {
        Moments m;
        for (std::int64_t c = 0; c < chunks; ++c) {
            m.merge(parts[static_cast<std::size_t>(bin * chunks + c)]);
        }
        curve.bins.push_back(make_bin(mids[static_cast<std::size_t>(bin)], m));
    }
    return curve;
}

CoverageCurve coverage_curve(const SimConfig& config, double epsilon, Reuse reuse,
                             const SeedKey& key, Execution exec)
{
    return coverage_curve(Scenario(config, epsilon, reuse), key, exec);
}

CoverageCurve coverage_curve(const SimConfig& config, double epsilon, Reuse reuse, Execution exec)
{
    return coverage_curve(config, epsilon, reuse, coverage_key(config.master_seed), exec);
}

Estimate edge_coverage(const Scenario& s, const SeedKey& key, Execution exec)
{
    const auto m = chunked(s.n_trials, key, exec, [&](RandomStream& rng, Scratch& scratch) {
        return edge_trial(s, rng, scratch);
    });
    return {m.mean(), m.std_error()};
}

Estimate edge_coverage(const SimConfig& config, double epsilon, Reuse reuse, const SeedKey& key,
                       Execution exec)
{
    return edge_coverage(Scenario(config, epsilon, reuse), key, exec);
}

Estimate avg_rate(const Scenario& s, const SeedKey& key, Execution exec)
{
    const auto m = chunked(s.n_trials, key, exec, [&](RandomStream& rng, Scratch& scratch) {
        return rate_trial(s, rng, scratch);
    });
    return {s.rate_scale * m.mean(), s.rate_scale * m.std_error()};
}

Estimate avg_rate(const SimConfig& config, double epsilon, Reuse reuse, const SeedKey& key,
                  Execution exec)
{
    return avg_rate(Scenario(config, epsilon, reuse), key, exec);
}

namespace reference {

Estimate avg_tx_power_mc(double epsilon, double alpha, double cell_radius_m, std::int64_t n,
                         RandomStream& rng)
{
    const auto m = sequential(n, rng, [&](RandomStream& r, Scratch&) {
        return power_trial(epsilon, alpha, cell_radius_m, r);
    });
    return {m.mean(), m.std_error()};
}

CoverageCurve coverage_curve(const Scenario& s, RandomStream& rng)
{
    CoverageCurve curve{s.pc.epsilon, s.reuse, {}};
    for (const double r : s.bin_midpoints()) {
        const auto m = sequential(s.n_trials, rng, [&](RandomStream& g, Scratch& scratch) {
            return coverage_trial(s, r, g, scratch);
        });
        curve.bins.push_back(make_bin(r, m));
    }
    return curve;
}

Estimate edge_coverage(const Scenario& s, RandomStream& rng)
{
    const auto m = sequential(s.n_trials, rng, [&](RandomStream& g, Scratch& scratch) {
        return edge_trial(s, g, scratch);
    });
    return {m.mean(), m.std_error()};
}

Estimate avg_rate(const Scenario& s, RandomStream& rng)
{
    const auto m = sequential(s.n_trials, rng, [&](RandomStream& g, Scratch& scratch) {
        return rate_trial(s, g, scratch);
    });
    return {s.rate_scale * m.mean(), s.rate_scale * m.std_error()};
}

}  // namespace reference

}  // namespace upc
