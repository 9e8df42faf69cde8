#include "upc/sinr.hpp"

#include <cmath>
#include <stdexcept>

namespace upc {

double PowerControl::received(double r, double d) const
{
    const double tx = mode == SinrMode::Normalized ? tx_power_norm(r, epsilon, alpha, cell_radius_m)
                                                   : std::pow(r, alpha * epsilon);
    return tx * path_gain(d, alpha);
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double noise_per_prb_dbm(const SimConfig& config)
{
    const double bandwidth_hz =
        static_cast<double>(config.subcarriers_per_prb) * config.subcarrier_spacing_hz;
    return config.noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz);
}

NoiseModel noise_variance_norm(const SimConfig& config)
{
    if (std::isinf(config.noise_psd_dbm_hz) && config.noise_psd_dbm_hz < 0.0) {
        return {0.0};
    }
    return {db_to_linear(noise_per_prb_dbm(config) - config.max_tx_power_dbm)};
}

SinrSample instantaneous_sinr(const UserDrop& drop, const FadingDraw& fading,
                              const PowerControl& pc, NoiseModel noise)
{
    if (fading.h.size() != drop.interferers.size()) {
        throw std::invalid_argument("instantaneous_sinr: fading and interferer counts differ");
    }
    SinrSample out;
    out.signal = fading.g * pc.received(drop.r, drop.r);
    for (std::size_t i = 0; i < drop.interferers.size(); ++i) {
        const auto& link = drop.interferers[i];
        out.interference += fading.h[i] * pc.received(link.r, link.d);
    }
    out.eta = out.signal / (noise.sigma2_norm + out.interference);
    return out;
}

double conditional_coverage(const UserDrop& drop, const PowerControl& pc, NoiseModel noise,
                            double target_linear)
{
    const double ts = target_linear / pc.received(drop.r, drop.r);
    double p = std::exp(-ts * noise.sigma2_norm);
    for (const auto& link : drop.interferers) {
        p /= 1.0 + ts * pc.received(link.r, link.d);
    }
    return p;
}

}  // namespace upc
