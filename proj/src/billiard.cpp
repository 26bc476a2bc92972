#include "lorentz/billiard.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lorentz/errors.hpp"

namespace lorentz {

namespace {

// Disk copies of one periodic cell, unfolded so that both boundary modes
// become a pure (1 x cell_height) translation lattice. Reflecting strips
// unfold by mirroring at y=0, giving height 2.
struct UnfoldedCell {
    std::vector<Disk> disks;
    double height = 1.0;
};

UnfoldedCell unfold(const ScattererLattice& lat) {
    UnfoldedCell u;
    if (lat.boundary_mode == BoundaryMode::vertical_torus) {
        u.disks = lat.cell_disks;
        u.height = 1.0;
    } else {
        u.height = 2.0;
        for (const auto& d : lat.cell_disks) {
            u.disks.push_back(d);
            u.disks.push_back({{d.center.x, -d.center.y + 2.0}, d.radius});
        }
    }
    return u;
}

double wrap_unit(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;  // floor rounding at exact integers
    return r;
}

// First hit parameter of the ray p + s d against the unfolded periodic disk
// set, capped at `cap`. Ring search over cell copies; returns cap when free.
double ray_first_hit(const UnfoldedCell& cell, Vec2 p, const Vec2& d,
                     double cap, double r_max) {
    const double fx = std::floor(p.x);
    const double fy = std::floor(p.y / cell.height) * cell.height;
    p.x -= fx;
    p.y -= fy;
    double best = cap;
    const int rings = static_cast<int>(std::ceil(cap)) + 1;
    for (int R = 0; R <= rings; ++R) {
        if (static_cast<double>(R) - 1.0 - r_max > best) break;
        for (int jx = -R; jx <= R; ++jx) {
            for (int jy = -R; jy <= R; ++jy) {
                if (std::max(std::abs(jx), std::abs(jy)) != R) continue;
                for (const auto& disk : cell.disks) {
                    const Vec2 c{disk.center.x + jx,
                                 disk.center.y + jy * cell.height};
                    if (auto t = ray_circle_first_hit(p, d, c, disk.radius))
                        best = std::min(best, *t);
                }
            }
        }
    }
    return best;
}

// Free chord of the full line through `p` with direction `d`, capped.
double free_chord(const UnfoldedCell& cell, const Vec2& p, const Vec2& d,
                  double cap, double r_max) {
    const double fwd = ray_first_hit(cell, p, d, cap, r_max);
    const double bwd = ray_first_hit(cell, p, {-d.x, -d.y}, cap, r_max);
    return fwd + bwd;
}

}  // namespace

double ScattererLattice::max_radius() const {
    double r = 0.0;
    for (const auto& d : cell_disks) r = std::max(r, d.radius);
    return r;
}

void ScattererLattice::validate_geometry() const {
    const bool torus = boundary_mode == BoundaryMode::vertical_torus;
    for (const auto& d : cell_disks) {
        if (!(d.radius > 0.0)) throw ConfigError("disk radius must be positive");
        if (d.center.x < 0.0 || d.center.x >= 1.0 || d.center.y < 0.0 ||
            d.center.y >= 1.0)
            throw ConfigError("disk centers must lie in [0,1) x [0,1)");
        if (!torus && (d.center.y - d.radius <= 0.0 || d.center.y + d.radius >= 1.0))
            throw ConfigError("disk overlaps a strip boundary");
        if (2.0 * d.radius >= 1.0)
            throw ConfigError("disk diameter exceeds the unit cell");
    }
    const double ystep = torus ? 1.0 : 0.0;  // no y-copies in reflecting mode
    for (std::size_t i = 0; i < cell_disks.size(); ++i) {
        for (std::size_t j = i; j < cell_disks.size(); ++j) {
            for (int jx = -1; jx <= 1; ++jx) {
                for (int jy = -1; jy <= 1; ++jy) {
                    if (i == j && jx == 0 && jy == 0) continue;
                    if (!torus && jy != 0) continue;
                    const Vec2 a = cell_disks[i].center;
                    const Vec2 b{cell_disks[j].center.x + jx,
                                 cell_disks[j].center.y + jy * (torus ? 1.0 : ystep)};
                    if (norm(a - b) <= cell_disks[i].radius + cell_disks[j].radius)
                        throw ConfigError("disks overlap under periodic extension");
                }
            }
        }
    }
}

ParticleState ParticleState::make(Vec2 q, Vec2 v) {
    const double n = norm(v);
    if (std::abs(n - 1.0) > 1e-9) throw DomainError("velocity must be unit");
    ParticleState s;
    s.q = q;
    s.v = {v.x / n, v.y / n};
    s.cell_index = static_cast<std::int64_t>(std::floor(q.x));
    return s;
}

CollisionEvent next_collision(const ParticleState& state,
                              const ScattererLattice& lattice,
                              double max_flight) {
    const bool torus = lattice.boundary_mode == BoundaryMode::vertical_torus;
    const double r_max = lattice.max_radius();
    const Vec2& v = state.v;

    // Local coordinates: integer translation, exact in floating point.
    const double fx = std::floor(state.q.x);
    const double fy = torus ? std::floor(state.q.y) : 0.0;
    const Vec2 p{state.q.x - fx, state.q.y - fy};

    double best = max_flight;
    int best_disk = -1;
    std::int64_t best_jx = 0, best_jy = 0;
    const int rings = static_cast<int>(std::ceil(max_flight)) + 1;
    for (int R = 0; R <= rings; ++R) {
        if (static_cast<double>(R) - 1.0 - r_max > best) break;
        for (int jx = -R; jx <= R; ++jx) {
            for (int jy = -R; jy <= R; ++jy) {
                if (std::max(std::abs(jx), std::abs(jy)) != R) continue;
                if (!torus && jy != 0) continue;
                for (std::size_t i = 0; i < lattice.cell_disks.size(); ++i) {
                    const auto& disk = lattice.cell_disks[i];
                    const Vec2 c{disk.center.x + jx, disk.center.y + jy};
                    if (auto t = ray_circle_first_hit(p, v, c, disk.radius)) {
                        if (*t < best) {
                            best = *t;
                            best_disk = static_cast<int>(i);
                            best_jx = jx;
                            best_jy = jy;
                        }
                    }
                }
            }
        }
    }

    CollisionEvent ev;
    if (!torus) {
        // Strip floor/ceiling are collision surfaces of the reflecting strip.
        if (v.y < 0.0) {
            const double t = (0.0 - p.y) / v.y;
            if (t > Tolerances::param && t < best) {
                best = t;
                best_disk = -1;
                ev.hit_object = HitObject::strip_floor;
            }
        } else if (v.y > 0.0) {
            const double t = (1.0 - p.y) / v.y;
            if (t > Tolerances::param && t < best) {
                best = t;
                best_disk = -1;
                ev.hit_object = HitObject::strip_ceiling;
            }
        }
    }

    if (best >= max_flight) {
        throw NoCollisionWithinHorizon(
            "no collision within certified free path " + std::to_string(max_flight));
    }

    ev.flight_time = best;
    ev.kappa = best * v.x;
    ev.hit_point = {state.q.x + ev.kappa, state.q.y + best * v.y};
    if (best_disk >= 0) {
        ev.hit_object = HitObject::disk;
        ev.disk_id = best_disk;
        ev.disk_cell_x = static_cast<std::int64_t>(fx) + best_jx;
        ev.disk_cell_y = static_cast<std::int64_t>(fy) + best_jy;
    }
    return ev;
}

std::pair<ParticleState, double> billiard_map(const ParticleState& state,
                                              const ScattererLattice& lattice,
                                              double max_flight) {
    const CollisionEvent ev = next_collision(state, lattice, max_flight);
    return {apply_collision(state, ev, lattice), ev.kappa};
}

ParticleState apply_collision(const ParticleState& state, const CollisionEvent& ev,
                              const ScattererLattice& lattice) {
    ParticleState out;
    out.q = ev.hit_point;
    if (lattice.boundary_mode == BoundaryMode::vertical_torus)
        out.q.y = wrap_unit(out.q.y);

    Vec2 n;
    switch (ev.hit_object) {
        case HitObject::disk: {
            const auto& disk = lattice.cell_disks[ev.disk_id];
            const Vec2 c{disk.center.x + static_cast<double>(ev.disk_cell_x),
                         disk.center.y + static_cast<double>(ev.disk_cell_y)};
            // local-position normal keeps the computation cell-independent
            const double fx = std::floor(state.q.x);
            const double fy = lattice.boundary_mode == BoundaryMode::vertical_torus
                                  ? std::floor(state.q.y)
                                  : 0.0;
            const Vec2 hit_local{state.q.x - fx + ev.flight_time * state.v.x,
                                 state.q.y - fy + ev.flight_time * state.v.y};
            const Vec2 c_local{c.x - fx, c.y - fy};
            n = (hit_local - c_local) * (1.0 / disk.radius);
            break;
        }
        case HitObject::strip_floor:
            n = {0.0, 1.0};
            break;
        case HitObject::strip_ceiling:
            n = {0.0, -1.0};
            break;
        case HitObject::wall:
            throw DomainError("wall hits are not produced by the billiard core");
    }
    Vec2 v = reflect(state.v, n);
    const double vn = norm(v);
    out.v = {v.x / vn, v.y / vn};  // keep |v| = 1 over long runs
    out.cell_index = static_cast<std::int64_t>(std::floor(out.q.x));
    return out;
}

bool validate_symmetry(const ScattererLattice& lattice) {
    const bool torus = lattice.boundary_mode == BoundaryMode::vertical_torus;
    auto circ = [](double a, double b) {
        double d = std::abs(a - b);
        return std::min(d, 1.0 - d);
    };
    for (const auto& d : lattice.cell_disks) {
        const double mx = wrap_unit(-d.center.x);
        bool found = false;
        for (const auto& e : lattice.cell_disks) {
            const double dy = torus ? circ(d.center.y, e.center.y)
                                    : std::abs(d.center.y - e.center.y);
            if (circ(mx, e.center.x) <= Tolerances::symmetry &&
                dy <= Tolerances::symmetry &&
                std::abs(d.radius - e.radius) <= Tolerances::symmetry) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

HorizonCertificate validate_finite_horizon(const ScattererLattice& lattice,
                                           int n_directions, int n_anchors) {
    if (lattice.cell_disks.empty()) throw InfiniteHorizonError(1.0, 0.0);
    const UnfoldedCell cell = unfold(lattice);
    const double Y = cell.height;
    const double r_max = lattice.max_radius();

    // Exact corridor test for rational directions. A direction along the
    // lattice vector w = (p, qY) projects the period lattice onto its normal
    // with spacing Y/|w|; once that spacing is below 2*r_max the widest disk
    // alone covers every line, so only finitely many (p,q) need checking.
    const double wmax = Y / (2.0 * r_max) + 1.0;
    const int pmax = static_cast<int>(std::ceil(wmax));
    const int qmax = static_cast<int>(std::ceil(wmax / Y));
    for (int p = 0; p <= pmax; ++p) {
        for (int q = -qmax; q <= qmax; ++q) {
            if (p == 0 && q != 1) continue;
            if (p > 0 && std::gcd(p, std::abs(q)) != 1) continue;
            const double wx = p, wy = q * Y;
            const double wn = std::hypot(wx, wy);
            if (wn > wmax || wn == 0.0) continue;
            const Vec2 nrm{-wy / wn, wx / wn};
            const double delta = Y / wn;
            std::vector<std::pair<double, double>> iv;
            for (const auto& d : cell.disks) {
                const double m = std::fmod(
                    std::fmod(dot(d.center, nrm), delta) + delta, delta);
                iv.emplace_back(m - d.radius, m + d.radius);
            }
            std::sort(iv.begin(), iv.end());
            // coverage of the circle of circumference delta
            double reach = iv.front().first;  // start of the first interval
            const double start = reach;
            bool gap = false;
            for (const auto& [lo, hi] : iv) {
                if (lo > reach + Tolerances::coverage) {
                    gap = true;
                    break;
                }
                reach = std::max(reach, hi);
            }
            if (!gap && reach < start + delta - Tolerances::coverage) {
                // wrap-around: intervals shifted by +delta must reach start+delta
                double reach2 = reach;
                for (const auto& [lo, hi] : iv) {
                    if (lo + delta > reach2 + Tolerances::coverage) break;
                    reach2 = std::max(reach2, hi + delta);
                }
                if (reach2 < start + delta - Tolerances::coverage) gap = true;
            }
            if (gap) throw InfiniteHorizonError(wx / wn, wy / wn);
        }
    }

    // Numeric bound on the maximal free chord: direction x anchor sweep,
    // then local refinement around the best candidate of every direction.
    // Grid step: pi/n_directions in angle, Y/n_anchors on the transversal.
    const double cap = 16.0;
    auto chord_at = [&](double theta, double a) {
        const Vec2 d{std::cos(theta), std::sin(theta)};
        const Vec2 p = std::abs(d.x) >= std::abs(d.y) ? Vec2{0.0, a * Y}
                                                      : Vec2{a, 0.0};
        return free_chord(cell, p, d, cap, r_max);
    };

    struct Candidate {
        double value, theta, anchor;
    };
    std::vector<Candidate> per_direction(n_directions, {0.0, 0.0, 0.0});
    for (int i = 0; i < n_directions; ++i) {
        const double theta = (i + 0.5) * M_PI / n_directions;
        auto& c = per_direction[i];
        for (int j = 0; j < n_anchors; ++j) {
            const double a = (j + 0.5) / n_anchors;
            const double g = chord_at(theta, a);
            if (g > c.value) c = {g, theta, a};
        }
    }
    std::sort(per_direction.begin(), per_direction.end(),
              [](const Candidate& a, const Candidate& b) { return a.value > b.value; });

    // The maximal free chord lies on a line supported by (tangent to) two
    // disk copies; the grid sweep can miss these narrow spikes, so every
    // bitangent of nearby copy pairs is probed directly.
    double bitangent_best = 0.0, bitangent_theta = 0.0;
    const int span = 8;
    for (std::size_t i = 0; i < cell.disks.size(); ++i) {
        for (std::size_t j = 0; j < cell.disks.size(); ++j) {
            for (int ox = -span; ox <= span; ++ox) {
                for (int oy = -span; oy <= span; ++oy) {
                    const Vec2 ca = cell.disks[i].center;
                    const Vec2 cb{cell.disks[j].center.x + ox,
                                  cell.disks[j].center.y + oy * cell.height};
                    const double ra = cell.disks[i].radius;
                    const double rb = cell.disks[j].radius;
                    const Vec2 ab = cb - ca;
                    const double D = norm(ab);
                    if (D < 1e-9 || D > 2.0 * span) continue;
                    const double base = std::atan2(ab.y, ab.x);
                    for (int s : {+1, -1}) {  // outer / inner tangents
                        const double k = (ra - s * rb) / D;
                        if (std::abs(k) > 1.0) continue;
                        for (int side : {+1, -1}) {
                            const double phi = base + side * std::acos(k);
                            const Vec2 nrm{std::cos(phi), std::sin(phi)};
                            const Vec2 pa = ca + nrm * ra;
                            const Vec2 pb = cb + nrm * (s * rb);
                            const Vec2 mid = (pa + pb) * 0.5;
                            const Vec2 dir{-nrm.y, nrm.x};
                            const double g = free_chord(cell, mid, dir, cap, r_max);
                            if (g > bitangent_best) {
                                bitangent_best = g;
                                bitangent_theta = std::atan2(dir.y, dir.x);
                            }
                        }
                    }
                }
            }
        }
    }

    // refine the strongest candidates with two shrinking local grids
    double best = per_direction.front().value;
    double best_theta = per_direction.front().theta;
    const int refine = std::min<int>(32, n_directions);
    for (int r = 0; r < refine; ++r) {
        double t = per_direction[r].theta, a = per_direction[r].anchor;
        double v = per_direction[r].value;
        double dth = M_PI / n_directions, da = 1.0 / n_anchors;
        for (int pass = 0; pass < 2; ++pass) {
            double bt = t, ba = a;
            for (int i = -6; i <= 6; ++i) {
                for (int j = -6; j <= 6; ++j) {
                    const double g = chord_at(t + i * dth / 6.0, a + j * da / 6.0);
                    if (g > v) {
                        v = g;
                        bt = t + i * dth / 6.0;
                        ba = a + j * da / 6.0;
                    }
                }
            }
            t = bt;
            a = ba;
            dth /= 6.0;
            da /= 6.0;
        }
        if (v > best) {
            best = v;
            best_theta = t;
        }
    }
    if (bitangent_best > best) {
        best = bitangent_best;
        best_theta = bitangent_theta;
    }
    if (best >= 2.0 * cap - 1.0)
        throw InfiniteHorizonError(std::cos(best_theta), std::sin(best_theta));

    HorizonCertificate cert;
    cert.observed_max = best;
    cert.worst_direction = best_theta;
    cert.max_free_path = best * 1.15 + 0.25;  // inflation for grid resolution
    cert.n_directions = n_directions;
    cert.n_anchors = n_anchors;
    return cert;
}

}  // namespace lorentz
