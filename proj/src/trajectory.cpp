#include "lorentz/trajectory.hpp"

#include <cmath>

#include "lorentz/errors.hpp"

namespace lorentz {

LorentzConfig LorentzConfig::make(ScattererLattice lattice, bool count_wall_hits,
                                  double certified_bound) {
    lattice.validate_geometry();
    if (!validate_symmetry(lattice))
        throw ConfigError("scatterer configuration is not mirror symmetric");
    LorentzConfig cfg;
    cfg.max_free_path = certified_bound > 0.0
                            ? certified_bound
                            : validate_finite_horizon(lattice).max_free_path;
    cfg.wall = WallConfig::from_lattice(lattice);
    cfg.lattice = std::move(lattice);
    cfg.count_wall_hits = count_wall_hits;
    return cfg;
}

ParticleState sample_initial_state(Rng& rng, const LorentzConfig& config) {
    const auto& lat = config.lattice;
    const bool torus = lat.boundary_mode == BoundaryMode::vertical_torus;

    // boundary pieces in the two cells next to the wall, x in [-1, 1)
    struct Piece {
        int disk = -1;  // -1: floor, -2: ceiling
        int cell = 0;
        double length = 0.0;
    };
    std::vector<Piece> pieces;
    double total = 0.0;
    for (int cell = -1; cell <= 0; ++cell) {
        for (std::size_t i = 0; i < lat.cell_disks.size(); ++i) {
            const double len = 2.0 * M_PI * lat.cell_disks[i].radius;
            pieces.push_back({static_cast<int>(i), cell, len});
            total += len;
        }
        if (!torus) {
            pieces.push_back({-1, cell, 1.0});
            pieces.push_back({-2, cell, 1.0});
            total += 2.0;
        }
    }

    double a = rng.uniform01() * total;
    const Piece* pick = &pieces.back();
    for (const auto& p : pieces) {
        if (a < p.length) {
            pick = &p;
            break;
        }
        a -= p.length;
    }

    Vec2 q, inward;
    if (pick->disk >= 0) {
        const Disk& d = lat.cell_disks[pick->disk];
        const double theta = 2.0 * M_PI * (a / pick->length);
        inward = {std::cos(theta), std::sin(theta)};
        q = {d.center.x + pick->cell + d.radius * inward.x,
             d.center.y + d.radius * inward.y};
        if (torus) q.y -= std::floor(q.y);
    } else if (pick->disk == -1) {
        q = {pick->cell + a, 0.0};
        inward = {0.0, 1.0};
    } else {
        q = {pick->cell + a, 1.0};
        inward = {0.0, -1.0};
    }

    // outgoing angle about the inward normal with the cosine density
    const double phi = std::asin(2.0 * rng.uniform01() - 1.0);
    const double cp = std::cos(phi), sp = std::sin(phi);
    const Vec2 v{inward.x * cp - inward.y * sp, inward.x * sp + inward.y * cp};
    return ParticleState::make(q, v);
}

TrajectoryRecord run_trajectory(Rng& rng_geometry, Rng& rng_holes,
                                const LorentzConfig& config,
                                const HoleSchedule& schedule, std::int64_t n,
                                const ParticleState* initial) {
    if (n < 1) throw DomainError("trajectory length must be >= 1");
    const bool has_wall = schedule.regime != Regime::no_wall;
    if (has_wall && schedule.horizon < n)
        throw ConfigError("schedule horizon is shorter than the trajectory");

    ParticleState st = initial ? *initial : sample_initial_state(rng_geometry, config);

    TrajectoryRecord rec;
    rec.x0 = st.q.x;
    rec.kappa.reserve(n);
    rec.S.reserve(n);
    rec.position.reserve(n);
    rec.L.reserve(n);
    rec.crossed.reserve(n);

    double mirror = 1.0;  // current world sign of the wall dynamics
    double pos_prev = rec.x0;
    double S_run = 0.0;
    std::int32_t L_run = 0;
    std::int64_t counted = 0;
    int chatter = 0;  // uncounted wall events since the last counted step

    auto emit = [&](double kappa, double position, bool l_jump, bool crossed) {
        S_run += kappa;
        L_run += l_jump ? 1 : 0;
        rec.kappa.push_back(kappa);
        rec.S.push_back(S_run);
        rec.position.push_back(position);
        rec.L.push_back(L_run);
        rec.crossed.push_back(crossed ? 1 : 0);
        ++counted;
        if (crossed) rec.crossing_steps.push_back(counted);
        pos_prev = position;
        chatter = 0;
    };

    while (counted < n) {
        const CollisionEvent ev = next_collision(st, config.lattice, config.max_free_path);
        const double x_prev = st.q.x;
        const double x_next = ev.hit_point.x;

        // A straight chord crosses the axis at most once; strip bounces do
        // not interrupt the horizontal motion.
        bool l_jump = false, crossed = false, blocked = false;
        if ((x_prev > 0.0 && x_next < 0.0) || (x_prev < 0.0 && x_next > 0.0)) {
            const double f = x_prev / (x_prev - x_next);
            double y_w = st.q.y + f * ev.flight_time * st.v.y;
            if (config.lattice.boundary_mode == BoundaryMode::vertical_torus)
                y_w -= std::floor(y_w);
            if (config.wall.component_of(y_w) >= 0) {
                l_jump = true;
                if (has_wall) {
                    crossed = decide_crossing(rng_holes, schedule, config.wall,
                                              counted + 1, y_w);
                    blocked = !crossed;
                } else {
                    crossed = true;  // no wall: every passage is a cross
                }
            }
        }

        if (blocked) {
            if (config.count_wall_hits) {
                // the wall hit is its own counted step at the axis
                emit(0.0 - pos_prev, 0.0, l_jump, false);
                l_jump = false;
                if (counted == n) break;
            } else {
                ++rec.wall_hits;
                if (++chatter > 1000) throw StepBudgetExceeded("wall-hit chatter");
            }
            mirror = -mirror;
        }

        st = apply_collision(st, ev, config.lattice);

        const double position = mirror * x_next;  // exact sign flip
        // a blocked step is a two-segment flight; its displacement does not
        // equal +-kappa of the underlying chord
        const double kappa = blocked ? position - pos_prev : mirror * ev.kappa;
        emit(kappa, position, l_jump, crossed);
    }
    return rec;
}

namespace {

PathFunction diffusive_path(const TrajectoryRecord& rec, std::int64_t n,
                            bool local_time) {
    if (rec.steps() < n) throw DomainError("record shorter than n");
    const double sq = std::sqrt(static_cast<double>(n));
    PathFunction p;
    p.t.resize(n + 1);
    p.v.resize(n + 1);
    for (std::int64_t k = 0; k <= n; ++k) {
        p.t[k] = static_cast<double>(k) / static_cast<double>(n);
        p.v[k] = (local_time ? static_cast<double>(rec.L_at(k)) : rec.S_at(k)) / sq;
    }
    p.interp = local_time ? PathFunction::Interp::step : PathFunction::Interp::linear;
    return p;
}

}  // namespace

PathFunction scaled_path(const TrajectoryRecord& record, std::int64_t n) {
    return diffusive_path(record, n, false);
}

PathFunction local_time_path(const TrajectoryRecord& record, std::int64_t n) {
    return diffusive_path(record, n, true);
}

}  // namespace lorentz
