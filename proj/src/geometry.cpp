#include "upc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace upc {

namespace {

struct LatticeCell {
    int a = 0;
    int b = 0;
    int tier = 0;
    double angle = 0.0;
    Point position;
};

int hex_distance(int a, int b)
{
    // Axial coordinates on basis e1 = (1,0), e2 = (1/2, sqrt(3)/2).
    return (std::abs(a) + std::abs(b) + std::abs(a + b)) / 2;
}

}  // namespace

double Point::norm() const noexcept
{
    return std::hypot(x, y);
}

CellLayout build_layout(double cell_radius_m)
{
    if (!(cell_radius_m > 0.0) || !std::isfinite(cell_radius_m)) {
        throw std::invalid_argument("build_layout: cell radius must be positive");
    }
    const double spacing = 2.0 * cell_radius_m;

    std::vector<LatticeCell> cells;
    for (int a = -2; a <= 2; ++a) {
        for (int b = -2; b <= 2; ++b) {
            const int tier = hex_distance(a, b);
            if (tier > 2) {
                continue;
            }
            LatticeCell cell{a, b, tier, 0.0, {}};
            cell.position = {spacing * (a + 0.5 * b), spacing * (std::numbers::sqrt3 / 2.0) * b};
            double angle = std::atan2(cell.position.y, cell.position.x);
            if (angle < 0.0) {
                angle += 2.0 * std::numbers::pi;
            }
            cell.angle = tier == 0 ? 0.0 : angle;
            cells.push_back(cell);
        }
    }
    std::sort(cells.begin(), cells.end(), [](const LatticeCell& l, const LatticeCell& r) {
        return l.tier != r.tier ? l.tier < r.tier : l.angle < r.angle;
    });

    CellLayout layout;
    layout.cell_radius_m = cell_radius_m;
    layout.site_distance_m = spacing;
    for (const auto& cell : cells) {
        layout.bs_positions.push_back(cell.position);
        layout.tier_of.push_back(cell.tier);
        layout.color_of.push_back((((cell.a - cell.b) % 3) + 3) % 3);
    }
    return layout;
}

std::vector<std::size_t> cochannel_set(const CellLayout& layout, Reuse reuse)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < layout.size(); ++i) {
        if (reuse == Reuse::FR1 || layout.color_of[i] == layout.color_of[0]) {
            out.push_back(i);
        }
    }
    return out;
}

double sample_radius(RandomStream& rng, double cell_radius_m)
{
    return cell_radius_m * std::sqrt(rng.uniform());
}

double sample_radius_band(RandomStream& rng, double inner_m, double cell_radius_m)
{
    const double lo = inner_m / cell_radius_m;
    const double lo2 = lo * lo;
    return cell_radius_m * std::sqrt(lo2 + rng.uniform() * (1.0 - lo2));
}

void sample_drop(const CellLayout& layout, const std::vector<std::size_t>& cochannel,
                 RandomStream& rng, std::optional<double> r_fixed, UserDrop& drop)
{
    const double radius = layout.cell_radius_m;
    if (r_fixed) {
        if (!(*r_fixed > 0.0 && *r_fixed <= radius)) {
            throw std::invalid_argument("sample_drop: r_fixed must lie in (0, R]");
        }
        drop.r = *r_fixed;
    } else {
        drop.r = sample_radius(rng, radius);
    }
    drop.interferers.resize(cochannel.size());
    for (std::size_t k = 0; k < cochannel.size(); ++k) {
        const Point& bs = layout.bs_positions[cochannel[k]];
        const double ri = sample_radius(rng, radius);
        const double theta = rng.angle();
        const double x = bs.x + ri * std::cos(theta);
        const double y = bs.y + ri * std::sin(theta);
        drop.interferers[k] = {ri, std::hypot(x, y)};
    }
}

UserDrop sample_drop(const CellLayout& layout, const std::vector<std::size_t>& cochannel,
                     RandomStream& rng, std::optional<double> r_fixed)
{
    UserDrop drop;
    sample_drop(layout, cochannel, rng, r_fixed, drop);
    return drop;
}

}  // namespace upc
