// Wall-clock comparison of the serial reference estimators against the chunked
// OpenMP ones. Usage: upc_bench [n_trials] [max_workers]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "upc/metrics.hpp"

using namespace upc;

namespace {

double time_best_of(int reps, const std::function<double()>& fn, double& sink)
{
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        sink += fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv)
{
    SimConfig config;
    config.n_trials = argc > 1 ? std::atoll(argv[1]) : 20000;
    const int max_workers = argc > 2 ? std::atoi(argv[2]) : std::max(4, omp_get_max_threads());
    const Scenario fr1(config, 0.5, Reuse::FR1);
    const SeedKey key{config.master_seed, tag_of("bench")};
    const std::int64_t power_n = 100 * config.n_trials;

    struct Case {
        std::string name;
        std::function<double(RandomStream&)> serial;
        std::function<double(Execution)> parallel;
    };
    const std::vector<Case> cases{
        {"avg_tx_power_mc",
         [&](RandomStream& rng) {
             return reference::avg_tx_power_mc(0.5, 3.0, 500.0, power_n, rng).value;
         },
         [&](Execution e) { return avg_tx_power_mc(0.5, 3.0, 500.0, power_n, key, e).value; }},
        {"coverage_curve",
         [&](RandomStream& rng) { return reference::coverage_curve(fr1, rng).bins[0].coverage; },
         [&](Execution e) { return coverage_curve(fr1, key, e).bins[0].coverage; }},
        {"edge_coverage",
         [&](RandomStream& rng) { return reference::edge_coverage(fr1, rng).value; },
         [&](Execution e) { return edge_coverage(fr1, key, e).value; }},
        {"avg_rate",
         [&](RandomStream& rng) { return reference::avg_rate(fr1, rng).value; },
         [&](Execution e) { return avg_rate(fr1, key, e).value; }},
    };

    std::vector<int> worker_counts{1};
    for (int w = 2; w <= max_workers; w *= 2) {
        worker_counts.push_back(w);
    }

    std::printf("n_trials=%lld hardware_threads=%d\n", static_cast<long long>(config.n_trials),
                omp_get_num_procs());
    std::printf("%-16s %10s", "estimator", "reference");
    for (const int w : worker_counts) {
        std::printf(" %15s", ("workers=" + std::to_string(w)).c_str());
    }
    std::printf("\n");

    double sink = 0.0;
    for (const auto& c : cases) {
        RandomStream rng(key.stream_seed(0));
        const double ref = time_best_of(3, [&] { return c.serial(rng); }, sink);
        std::printf("%-16s %9.3fs", c.name.c_str(), ref);
        for (const int w : worker_counts) {
            const double t = time_best_of(3, [&] { return c.parallel(Execution{w}); }, sink);
            std::printf(" %7.3fs x%-4.2f", t, ref / t);
        }
        std::printf("\n");
    }
    // Keeps the optimizer from discarding results.
    std::printf("checksum %.6g\n", sink);
    return 0;
}
