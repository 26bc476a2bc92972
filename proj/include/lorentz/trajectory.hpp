#pragma once

#include <cstdint>
#include <vector>

#include "lorentz/billiard.hpp"
#include "lorentz/path.hpp"
#include "lorentz/wall.hpp"

namespace lorentz {

/// Validated simulation geometry: lattice, derived wall, horizon bound.
struct LorentzConfig {
    ScattererLattice lattice;
    WallConfig wall;
    double max_free_path = 0.0;
    bool count_wall_hits = false;

    static LorentzConfig make(ScattererLattice lattice, bool count_wall_hits = false,
                              double certified_bound = 0.0);
};

/// Per-collision record of one trajectory. Step k (1-based) is the k-th
/// counted collision; index k-1 in the vectors.
///
/// `position` is the source of truth for signs: position[k] is the exact
/// wall-relative x coordinate after step k (x0 at step 0). `S` is the
/// sequential running sum of kappa; for the wall-free dynamics the two agree
/// (position = x0 + S) summand for summand.
struct TrajectoryRecord {
    double x0 = 0.0;
    std::vector<double> kappa;
    std::vector<double> S;
    std::vector<double> position;
    std::vector<std::int32_t> L;
    std::vector<std::uint8_t> crossed;
    std::vector<std::int64_t> crossing_steps;
    std::int64_t wall_hits = 0;  // uncounted wall reflections

    std::int64_t steps() const { return static_cast<std::int64_t>(kappa.size()); }
    double S_at(std::int64_t k) const { return k <= 0 ? 0.0 : S[k - 1]; }
    double position_at(std::int64_t k) const { return k <= 0 ? x0 : position[k - 1]; }
    std::int32_t L_at(std::int64_t k) const { return k <= 0 ? 0 : L[k - 1]; }
};

/// Initial Poincare point from the invariant law restricted to the two cells
/// next to the wall: q uniform in arclength on the boundary for x in [-1,1),
/// outgoing angle with the cosine density.
ParticleState sample_initial_state(Rng& rng, const LorentzConfig& config);

/// Runs n counted collisions under the given hole regime. Wall interactions
/// use decide_crossing; a blocked hit reflects v_x -> -v_x and is not
/// counted (unless count_wall_hits). Every counted flight whose chord meets
/// an open wall component bumps L, in all regimes.
///
/// The wall regimes are stepped through the mirror coupling: the scatterer
/// configuration is symmetric about the wall, so reflecting there is the
/// same orbit continued in the mirrored world. The stepper tracks one
/// wall-free orbit plus the current mirror sign, which keeps
/// |position| identical to the wall-free run under shared geometry
/// randomness and costs one geometric orbit per trajectory.
TrajectoryRecord run_trajectory(Rng& rng_geometry, Rng& rng_holes,
                                const LorentzConfig& config,
                                const HoleSchedule& schedule, std::int64_t n,
                                const ParticleState* initial = nullptr);

/// Diffusive scaling of the displacement: grid k/n, values S_k/sqrt(n),
/// linear interpolation.
PathFunction scaled_path(const TrajectoryRecord& record, std::int64_t n);

/// Diffusive scaling of the wall-visit counter: grid k/n, values
/// L_k/sqrt(n), right-continuous steps.
PathFunction local_time_path(const TrajectoryRecord& record, std::int64_t n);

}  // namespace lorentz
