#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <vector>

namespace upc {

/// Trials per independent random stream. Fixed, so that partitioning (and
/// therefore every estimate) does not depend on the number of workers.
inline constexpr std::int64_t kChunkSize = 2048;

struct Execution {
    int workers = 1;
};

/// Running sums for a sample mean and its standard error.
struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::int64_t n = 0;

    void add(double x) noexcept
    {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    void merge(const Moments& o) noexcept
    {
        sum += o.sum;
        sum_sq += o.sum_sq;
        n += o.n;
    }
    double mean() const noexcept { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
    double std_error() const noexcept
    {
        if (n < 2) {
            return 0.0;
        }
        const double m = mean();
        const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        return var > 0.0 ? std::sqrt(var / static_cast<double>(n)) : 0.0;
    }
};

inline std::int64_t chunk_count(std::int64_t n_trials)
{
    return (n_trials + kChunkSize - 1) / kChunkSize;
}

/// Evaluates kernel(unit) for unit in [0, n_units) and returns the results in
/// unit order. workers <= 1 runs a plain loop; otherwise units are spread over
/// an OpenMP team. Results are bit-identical either way because each unit owns
/// its random stream and reduction happens afterwards, in order.
template <typename Result, typename Kernel>
std::vector<Result> run_units(std::int64_t n_units, Execution exec, Kernel&& kernel)
{
    std::vector<Result> out(static_cast<std::size_t>(n_units));
    if (exec.workers <= 1) {
        for (std::int64_t u = 0; u < n_units; ++u) {
            out[static_cast<std::size_t>(u)] = kernel(u);
        }
        return out;
    }

    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(exec.workers)
    for (std::int64_t u = 0; u < n_units; ++u) {
        try {
            out[static_cast<std::size_t>(u)] = kernel(u);
        } catch (...) {
#pragma omp critical(upc_run_units_error)
            if (!error) {
                error = std::current_exception();
            }
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return out;
}

inline Moments reduce(const std::vector<Moments>& parts)
{
    Moments total;
    for (const auto& p : parts) {
        total.merge(p);
    }
    return total;
}

}  // namespace upc
