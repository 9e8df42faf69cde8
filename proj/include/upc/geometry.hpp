#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "upc/config.hpp"
#include "upc/random.hpp"

namespace upc {

struct Point {
    double x = 0.0;
    double y = 0.0;

    double norm() const noexcept;
    bool operator==(const Point&) const = default;
};

/// Two tiers of a triangular lattice (spacing 2R) around a tagged BS at the
/// origin. Index 0 is the tagged cell; the rest are ordered by tier, then by
/// polar angle in [0, 2*pi).
struct CellLayout {
    double cell_radius_m = 0.0;
    double site_distance_m = 0.0;
    std::vector<Point> bs_positions;
    std::vector<int> tier_of;
    /// Reuse-3 color of each cell; the tagged cell has color 0.
    std::vector<int> color_of;

    std::size_t size() const noexcept { return bs_positions.size(); }
};

CellLayout build_layout(double cell_radius_m);

/// Neighbor cells sharing the tagged cell's PRB: all 18 for FR1, the six
/// same-color cells at 2*sqrt(3)*R for FR3.
std::vector<std::size_t> cochannel_set(const CellLayout& layout, Reuse reuse);

struct InterfererLink {
    double r = 0.0;  ///< interfering MS to its own BS
    double d = 0.0;  ///< interfering MS to the tagged BS
};

struct UserDrop {
    double r = 0.0;  ///< tagged MS to the tagged BS
    std::vector<InterfererLink> interferers;
};

/// Distance of a uniform point in a disk of radius R: density 2r/R^2.
double sample_radius(RandomStream& rng, double cell_radius_m);

/// Same law restricted to [inner_m, R].
double sample_radius_band(RandomStream& rng, double inner_m, double cell_radius_m);

/// One geometric realization. The tagged radius is r_fixed when given;
/// interferers are drawn in cochannel order, radius then angle. Reuses
/// `drop`'s storage.
void sample_drop(const CellLayout& layout, const std::vector<std::size_t>& cochannel,
                 RandomStream& rng, std::optional<double> r_fixed, UserDrop& drop);

UserDrop sample_drop(const CellLayout& layout, const std::vector<std::size_t>& cochannel,
                     RandomStream& rng, std::optional<double> r_fixed = std::nullopt);

}  // namespace upc
