#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace upc {

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and
/// `cdf`. Sorts `samples` in place.
template <typename Cdf>
double ks_statistic(std::vector<double>& samples, Cdf&& cdf)
{
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

}  // namespace upc
