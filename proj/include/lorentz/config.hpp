#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lorentz/trajectory.hpp"
#include "lorentz/wall.hpp"

namespace lorentz {

/// One experiment: geometry, hole schedule, run sizes, seeding, output.
/// Serialized form round-trips losslessly; the canonical dump feeds the
/// config hash embedded in every output file.
struct ExperimentConfig {
    ScattererLattice lattice;
    // optional explicit wall; must match the components derived from the
    // lattice when present
    std::optional<std::vector<std::pair<double, double>>> wall_components;
    HoleSchedule schedule;
    std::int64_t n = 10000;
    std::int64_t samples = 1000;
    std::uint64_t seed = 1;
    int grid_N = 10000;
    double t0 = 0.0;  // QRBM truncation; 0 means the default 1/sqrt(grid_N)
    bool count_wall_hits = false;
    int threads = 0;  // 0: default_threads()
    std::string out_dir = "out";
    double max_free_path = 0.0;  // 0: computed by validate_finite_horizon

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::json to_json() const;

    std::string canonical() const;
    std::string config_hash() const;

    double qrbm_t0() const;

    /// Validates lattice, wall, horizon and schedule; returns the simulation
    /// geometry. The schedule horizon is stamped to n.
    LorentzConfig build_lorentz();
};

/// Reference four-disk configuration on the vertical torus: finite horizon,
/// mirror symmetric, one wall component [0.08, 0.92].
ExperimentConfig default_fixture();

std::uint64_t fnv1a64(const std::string& s);

}  // namespace lorentz
