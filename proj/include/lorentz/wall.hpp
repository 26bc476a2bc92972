#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lorentz/billiard.hpp"
#include "lorentz/rng.hpp"

namespace lorentz {

/// The vertical wall at x = 0: the connected components of {x=0} in the
/// domain, as closed intervals [l, r] of y, plus the total length c1.
struct WallConfig {
    std::vector<std::pair<double, double>> components;
    double c1 = 0.0;
    double min_component_length = 0.0;

    static WallConfig from_components(std::vector<std::pair<double, double>> comps);
    /// Components computed from the lattice: [0,1] minus the chords of the
    /// disk copies that intersect the axis.
    static WallConfig from_lattice(const ScattererLattice& lattice);

    /// Arclength coordinate of y along the concatenated components.
    double arclength(double y) const;
    /// Inverse of arclength (a in [0, c1)).
    double point_at_arclength(double a) const;
    /// Index of the component containing y, or -1.
    int component_of(double y) const;
    bool contains(double y) const { return component_of(y) >= 0; }
};

/// A hole: one subinterval of a wall component, or two when the hole wraps
/// around its component. Pieces are open intervals.
struct HoleInterval {
    std::array<std::pair<double, double>, 2> pieces{};
    int n_pieces = 0;
    double total_length = 0.0;
};

enum class Regime { shrinking, double_array, no_wall };
enum class CrossingMode { geometric, trapdoor };
enum class AlphaFamily { inv_sqrt, constant, power };

/// Hole-size schedule a_n plus the crossing mechanism. In double_array mode
/// every draw at horizon n uses size a_n; in shrinking mode step k uses a_k.
struct HoleSchedule {
    Regime regime = Regime::no_wall;
    AlphaFamily family = AlphaFamily::inv_sqrt;
    double c = 1.0;        // inv_sqrt: c/sqrt(n); power: c*n^(-beta)
    double alpha_const = 0.0;
    double beta = 0.5;
    std::int64_t horizon = 0;
    CrossingMode crossing_mode = CrossingMode::geometric;

    double alpha(std::int64_t n) const;
    /// Size used for the hole indexed by collision counter k.
    double hole_size(std::int64_t k) const {
        return regime == Regime::double_array ? alpha(horizon) : alpha(k);
    }
    /// Hard error if any hole in [1, horizon] does not fit a component.
    void validate(const WallConfig& wall) const;
};

/// Deterministic hole construction from the uniform start point xi: the hole
/// of length alpha begins at xi and wraps around xi's component when it
/// overshoots the right end.
HoleInterval make_hole(const WallConfig& wall, double xi, double alpha);

/// xi uniform on the union of components; hole per make_hole.
HoleInterval sample_hole(Rng& rng, const WallConfig& wall, double alpha);

/// Open-interval membership; endpoints excluded.
bool hole_contains(const HoleInterval& hole, double y);

/// Exact crossing probability alpha / c1.
double crossing_probability(const WallConfig& wall, double alpha);

/// One crossing decision for a wall hit at hit_height, using the hole of
/// index k. Geometric mode places a fresh uniform hole; trapdoor mode is a
/// Bernoulli(alpha/c1) door. Both consume exactly one uniform draw, and the
/// hole position is parametrized relative to the hit height so the two modes
/// agree pathwise except near component wrap edges.
bool decide_crossing(Rng& rng, const HoleSchedule& schedule,
                     const WallConfig& wall, std::int64_t k, double hit_height);

}  // namespace lorentz
