#pragma once

#include <cstdint>
#include <vector>

#include "lorentz/path.hpp"
#include "lorentz/rng.hpp"
#include "lorentz/trajectory.hpp"
#include "lorentz/wall.hpp"

namespace lorentz {

/// Random-walk analogue of the hole dynamics: simple symmetric steps away
/// from 0; at 0 the walk continues to the far side with probability eps and
/// bounces back with probability 1-eps. shrinking: eps at time k is a_k;
/// double_array: eps = a_n for the whole horizon n.
struct WalkConfig {
    Regime regime = Regime::shrinking;
    HoleSchedule schedule;  // alpha family; crossing fields unused
    std::int64_t n = 0;

    double eps_at(std::int64_t k) const {
        return regime == Regime::double_array ? schedule.alpha(n) : schedule.alpha(k);
    }
    void validate() const;
};

/// Runs the walk. The record stores the walk's position in `position`
/// (x0 = initial +-1), kappa increments, L = number of visits to 0, and the
/// crossing events. All entries are integers in double format, so every
/// record invariant holds exactly.
TrajectoryRecord run_walk(Rng& rng, const WalkConfig& config);

/// P(sign chain ends at + | started at +) after transitions with flip
/// probabilities p: exactly (1 + prod(1 - 2 p_k)) / 2.
double chain_plus_probability(const std::vector<double>& p);

struct LeCamResult {
    double tv_distance = 0.0;
    double bound = 0.0;
};

/// Exact total-variation distance between a Poisson-binomial sum with
/// success probabilities p and the Poisson law with the matched mean,
/// against the bound 2 sum p_j^2. The pmf is convolved by dynamic
/// programming; the Poisson tail above m is added in full.
LeCamResult le_cam_bound(const std::vector<double>& p);

/// Diffusive scaling of the walk position: grid k/n, values S_k/sqrt(n)
/// with the walk's own origin included, linearly interpolated.
PathFunction walk_scaled_path(const TrajectoryRecord& record, std::int64_t n);

}  // namespace lorentz
