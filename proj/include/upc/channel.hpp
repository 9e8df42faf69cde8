#pragma once

#include <cstddef>
#include <vector>

#include "upc/random.hpp"

namespace upc {

/// Rayleigh fading power gains: g on the tagged link, h[i] per interferer.
struct FadingDraw {
    double g = 1.0;
    std::vector<double> h;
};

void sample_fading(RandomStream& rng, std::size_t n_interferers, FadingDraw& out);
FadingDraw sample_fading(RandomStream& rng, std::size_t n_interferers);

/// Transmit power as a fraction of P_max under fractional compensation,
/// (r/R)^(alpha*epsilon). Throws for r outside (0, R].
double tx_power_norm(double r, double epsilon, double alpha, double cell_radius_m);

/// d^-alpha. Throws for d <= 0.
double path_gain(double d, double alpha);

}  // namespace upc
