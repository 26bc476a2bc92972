#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lorentz/geometry.hpp"
#include "lorentz/rng.hpp"

namespace lorentz {

enum class BoundaryMode { reflecting_strip, vertical_torus };

/// Central tolerance table. All geometric comparisons route through these.
struct Tolerances {
    static constexpr double tangent = 1e-12;    // discriminant cutoff
    static constexpr double param = 1e-12;      // minimal flight parameter
    static constexpr double symmetry = 1e-12;   // mirror-match tolerance
    static constexpr double coverage = 1e-9;    // corridor gap cutoff
};

/// One horizontal unit cell of disks, extended Z-periodically in x (and in
/// y for vertical_torus mode). Centers live in [0,1) x [0,1).
struct ScattererLattice {
    std::vector<Disk> cell_disks;
    BoundaryMode boundary_mode = BoundaryMode::vertical_torus;

    double max_radius() const;
    /// Basic validity: radii positive, pairwise disjoint under periodic
    /// extension, disjoint from the strip floor/ceiling in reflecting mode.
    void validate_geometry() const;
};

/// Poincare-section point: position on the boundary (global coordinates,
/// x unbounded) and post-collisional unit velocity.
struct ParticleState {
    Vec2 q;
    Vec2 v;
    std::int64_t cell_index = 0;  // floor(q.x), the horizontal cell copy

    static ParticleState make(Vec2 q, Vec2 v);
};

enum class HitObject { disk, strip_floor, strip_ceiling, wall };

struct CollisionEvent {
    double flight_time = 0.0;
    Vec2 hit_point;              // continuous coordinates (y not wrapped)
    HitObject hit_object = HitObject::disk;
    int disk_id = -1;            // index into cell_disks when hit_object==disk
    std::int64_t disk_cell_x = 0;
    std::int64_t disk_cell_y = 0;
    double kappa = 0.0;          // horizontal displacement of the flight
};

/// Earliest intersection of the ray q + t v (t > 0) with a disk copy or, in
/// reflecting mode, the strip floor/ceiling. `max_flight` is the certified
/// horizon bound; exceeding it throws NoCollisionWithinHorizon.
CollisionEvent next_collision(const ParticleState& state,
                              const ScattererLattice& lattice,
                              double max_flight);

/// Post-collisional state for a computed event: specular reflection at the
/// hit object, q.y wrapped into [0,1) in vertical_torus mode.
ParticleState apply_collision(const ParticleState& state, const CollisionEvent& ev,
                              const ScattererLattice& lattice);

/// One step of the billiard ball map: next_collision composed with specular
/// reflection. In vertical_torus mode the returned state has q.y wrapped
/// into [0,1). Returns the new Poincare point and the kappa increment.
std::pair<ParticleState, double> billiard_map(const ParticleState& state,
                                              const ScattererLattice& lattice,
                                              double max_flight);

struct HorizonCertificate {
    double max_free_path = 0.0;   // certified upper bound B
    double observed_max = 0.0;    // largest free chord seen by the sweep
    double worst_direction = 0.0; // angle (radians) attaining observed_max
    int n_directions = 0;
    int n_anchors = 0;
};

/// Certifies a finite horizon. Exact corridor detection for the finitely
/// many rational directions that a single disk cannot cover, then a numeric
/// direction x anchor sweep (with local refinement) bounding the maximal
/// free chord. The certificate inflates the observed maximum; it certifies,
/// it does not prove. Throws InfiniteHorizonError when a corridor exists.
HorizonCertificate validate_finite_horizon(const ScattererLattice& lattice,
                                           int n_directions = 1800,
                                           int n_anchors = 400);

/// True iff the disk set equals its mirror image under x -> -x (mod 1),
/// within Tolerances::symmetry.
bool validate_symmetry(const ScattererLattice& lattice);

}  // namespace lorentz
