#pragma once

#include "upc/channel.hpp"
#include "upc/config.hpp"
#include "upc/geometry.hpp"

namespace upc {

/// Noise power in the same units as the transmit powers.
struct NoiseModel {
    double sigma2_norm = 0.0;
};

/// How transmit power enters the SINR.
///  - Normalized: P_t = (r/R)^(alpha*eps), a fraction of P_max; noise from
///    noise_variance_norm().
///  - Raw: P_t = r^(alpha*eps) with a caller-supplied noise variance; R is
///    ignored. Useful for checking against hand evaluations.
enum class SinrMode { Normalized, Raw };

struct PowerControl {
    double epsilon = 0.0;
    double alpha = 3.0;
    double cell_radius_m = 500.0;
    SinrMode mode = SinrMode::Normalized;

    /// Received power coefficient of a user at distance r from its own BS and
    /// d from the tagged BS, before fading.
    double received(double r, double d) const;
};

struct SinrSample {
    double eta = 0.0;
    double signal = 0.0;
    double interference = 0.0;
};

/// Per-PRB thermal noise relative to P_max. A noise PSD of -inf yields 0.
double noise_per_prb_dbm(const SimConfig& config);
NoiseModel noise_variance_norm(const SimConfig& config);

SinrSample instantaneous_sinr(const UserDrop& drop, const FadingDraw& fading,
                              const PowerControl& pc, NoiseModel noise);

/// P[eta > T | positions] with exponential fading:
///   exp(-T s sigma2) * prod_i 1 / (1 + T s I_i),  s = 1 / signal coefficient.
double conditional_coverage(const UserDrop& drop, const PowerControl& pc, NoiseModel noise,
                            double target_linear);

double db_to_linear(double db);

}  // namespace upc
