#include "lorentz/wall.hpp"

#include <algorithm>
#include <cmath>

#include "lorentz/errors.hpp"

namespace lorentz {

WallConfig WallConfig::from_components(std::vector<std::pair<double, double>> comps) {
    std::sort(comps.begin(), comps.end());
    WallConfig w;
    double prev = -1.0;
    for (const auto& [lo, hi] : comps) {
        if (!(hi > lo)) throw ConfigError("wall component has nonpositive length");
        if (lo < 0.0 || hi > 1.0) throw ConfigError("wall component outside [0,1]");
        if (lo <= prev) throw ConfigError("wall components overlap");
        prev = hi;
        w.c1 += hi - lo;
    }
    if (comps.empty()) throw ConfigError("wall has no components");
    w.components = std::move(comps);
    w.min_component_length = w.components.front().second - w.components.front().first;
    for (const auto& [lo, hi] : w.components)
        w.min_component_length = std::min(w.min_component_length, hi - lo);
    return w;
}

WallConfig WallConfig::from_lattice(const ScattererLattice& lattice) {
    const bool torus = lattice.boundary_mode == BoundaryMode::vertical_torus;
    // chords cut out of the axis by disk copies from cells x in {-1, 0} and,
    // on the torus, y in {-1, 0, 1}
    std::vector<std::pair<double, double>> cut;
    for (const auto& d : lattice.cell_disks) {
        for (int jx = -1; jx <= 1; ++jx) {
            const double dist = std::abs(d.center.x + jx);
            if (dist >= d.radius) continue;
            const double h = std::sqrt(d.radius * d.radius - dist * dist);
            for (int jy = torus ? -1 : 0; jy <= (torus ? 1 : 0); ++jy) {
                const double yc = d.center.y + jy;
                cut.emplace_back(yc - h, yc + h);
            }
        }
    }
    // subtract the cuts from [0,1]
    std::sort(cut.begin(), cut.end());
    std::vector<std::pair<double, double>> comps;
    double pos = 0.0;
    for (const auto& [lo, hi] : cut) {
        if (hi <= 0.0 || lo >= 1.0) continue;
        if (lo > pos) comps.emplace_back(pos, std::min(lo, 1.0));
        pos = std::max(pos, hi);
        if (pos >= 1.0) break;
    }
    if (pos < 1.0) comps.emplace_back(pos, 1.0);
    if (comps.empty())
        throw ConfigError("the axis x=0 is entirely covered by scatterers");
    return from_components(std::move(comps));
}

double WallConfig::arclength(double y) const {
    double acc = 0.0;
    for (const auto& [lo, hi] : components) {
        if (y <= hi) return acc + std::max(0.0, y - lo);
        acc += hi - lo;
    }
    return acc;
}

double WallConfig::point_at_arclength(double a) const {
    for (const auto& [lo, hi] : components) {
        const double len = hi - lo;
        if (a < len) return lo + a;
        a -= len;
    }
    return components.back().second;
}

int WallConfig::component_of(double y) const {
    for (std::size_t i = 0; i < components.size(); ++i)
        if (y > components[i].first && y < components[i].second)
            return static_cast<int>(i);
    return -1;
}

double HoleSchedule::alpha(std::int64_t n) const {
    switch (family) {
        case AlphaFamily::inv_sqrt:
            return c / std::sqrt(static_cast<double>(n));
        case AlphaFamily::constant:
            return alpha_const;
        case AlphaFamily::power:
            return c * std::pow(static_cast<double>(n), -beta);
    }
    return 0.0;
}

void HoleSchedule::validate(const WallConfig& wall) const {
    if (regime == Regime::no_wall) return;
    if (horizon < 1) throw ConfigError("schedule horizon must be >= 1");
    for (std::int64_t k = 1; k <= horizon; ++k) {
        const double a = hole_size(k);
        if (a < 0.0)
            throw ConfigError("hole size is negative at step " + std::to_string(k));
        if (a > 0.0 && a >= wall.min_component_length)
            throw HoleTooLarge("hole size " + std::to_string(a) + " at step " +
                               std::to_string(k) +
                               " does not fit the smallest wall component (" +
                               std::to_string(wall.min_component_length) + ")");
    }
}

HoleInterval make_hole(const WallConfig& wall, double xi, double alpha) {
    int ci = wall.component_of(xi);
    if (ci < 0) {
        // xi exactly on a component endpoint happens on a measure-zero set;
        // resolve with the closed-interval test
        for (std::size_t i = 0; i < wall.components.size(); ++i)
            if (xi >= wall.components[i].first && xi <= wall.components[i].second)
                ci = static_cast<int>(i);
        if (ci < 0) throw DomainError("hole start point is not on the wall");
    }
    const auto [lo, hi] = wall.components[ci];
    HoleInterval h;
    const double l = hi - xi;
    if (l > alpha) {
        h.pieces[0] = {xi, xi + alpha};
        h.n_pieces = 1;
    } else {
        h.n_pieces = 0;
        if (l > 0.0) h.pieces[h.n_pieces++] = {xi, hi};
        const double rem = alpha - l;
        if (rem > 0.0) h.pieces[h.n_pieces++] = {lo, lo + rem};
    }
    h.total_length = alpha;
    return h;
}

HoleInterval sample_hole(Rng& rng, const WallConfig& wall, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("hole size must be positive");
    if (alpha >= wall.min_component_length)
        throw HoleTooLarge("hole size " + std::to_string(alpha) +
                           " >= smallest component length " +
                           std::to_string(wall.min_component_length));
    const double xi = wall.point_at_arclength(rng.uniform01() * wall.c1);
    return make_hole(wall, xi, alpha);
}

bool hole_contains(const HoleInterval& hole, double y) {
    for (int i = 0; i < hole.n_pieces; ++i)
        if (y > hole.pieces[i].first && y < hole.pieces[i].second) return true;
    return false;
}

double crossing_probability(const WallConfig& wall, double alpha) {
    if (alpha < 0.0) throw DomainError("hole size must be nonnegative");
    if (alpha > 0.0 && alpha >= wall.min_component_length)
        throw HoleTooLarge("hole size exceeds the smallest wall component");
    return alpha / wall.c1;
}

bool decide_crossing(Rng& rng, const HoleSchedule& schedule,
                     const WallConfig& wall, std::int64_t k, double hit_height) {
    const double a = schedule.hole_size(k);
    const double u = rng.uniform01();  // one draw per decision in both modes
    if (a <= 0.0) return false;
    if (schedule.crossing_mode == CrossingMode::trapdoor)
        return u < crossing_probability(wall, a);
    // Geometric: xi placed at arclength(hit) - u*c1, which is uniform on the
    // wall and makes the decision coincide with the trapdoor one except when
    // the hole wraps around a component edge.
    double start = wall.arclength(hit_height) - u * wall.c1;
    if (start < 0.0) start += wall.c1;
    const HoleInterval hole = make_hole(wall, wall.point_at_arclength(start), a);
    return hole_contains(hole, hit_height);
}

}  // namespace lorentz
