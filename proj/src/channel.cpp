#include "upc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace upc {

void sample_fading(RandomStream& rng, std::size_t n_interferers, FadingDraw& out)
{
    out.g = rng.exponential();
    out.h.resize(n_interferers);
    for (auto& h : out.h) {
        h = rng.exponential();
    }
}

FadingDraw sample_fading(RandomStream& rng, std::size_t n_interferers)
{
    FadingDraw out;
    sample_fading(rng, n_interferers, out);
    return out;
}

double tx_power_norm(double r, double epsilon, double alpha, double cell_radius_m)
{
    if (!(r > 0.0 && r <= cell_radius_m)) {
        throw std::invalid_argument("tx_power_norm: r must lie in (0, R]");
    }
    return std::pow(r / cell_radius_m, alpha * epsilon);
}

double path_gain(double d, double alpha)
{
    if (!(d > 0.0)) {
        throw std::invalid_argument("path_gain: distance must be positive");
    }
    return std::pow(d, -alpha);
}

}  // namespace upc
