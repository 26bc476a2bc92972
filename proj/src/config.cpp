#include "lorentz/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lorentz/errors.hpp"

namespace lorentz {

namespace {

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::shrinking: return "shrinking";
        case Regime::double_array: return "double_array";
        case Regime::no_wall: return "no_wall";
    }
    return "";
}

Regime regime_from(const std::string& s) {
    if (s == "shrinking") return Regime::shrinking;
    if (s == "double_array") return Regime::double_array;
    if (s == "no_wall") return Regime::no_wall;
    throw ConfigError("schedule.regime: unknown value '" + s + "'");
}

std::string family_name(AlphaFamily f) {
    switch (f) {
        case AlphaFamily::inv_sqrt: return "inv_sqrt";
        case AlphaFamily::constant: return "const";
        case AlphaFamily::power: return "power";
    }
    return "";
}

AlphaFamily family_from(const std::string& s) {
    if (s == "inv_sqrt") return AlphaFamily::inv_sqrt;
    if (s == "const") return AlphaFamily::constant;
    if (s == "power") return AlphaFamily::power;
    throw ConfigError("schedule.family: unknown value '" + s + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    try {
        const auto& lat = j.at("lattice");
        const std::string mode = lat.at("boundary_mode").get<std::string>();
        if (mode == "vertical_torus")
            c.lattice.boundary_mode = BoundaryMode::vertical_torus;
        else if (mode == "reflecting_strip")
            c.lattice.boundary_mode = BoundaryMode::reflecting_strip;
        else
            throw ConfigError("lattice.boundary_mode: unknown value '" + mode + "'");
        for (const auto& d : lat.at("disks")) {
            if (!d.is_array() || d.size() != 3)
                throw ConfigError("lattice.disks: each disk is [cx, cy, r]");
            c.lattice.cell_disks.push_back(
                {{d[0].get<double>(), d[1].get<double>()}, d[2].get<double>()});
        }

        if (j.contains("wall") && j.at("wall").contains("components")) {
            std::vector<std::pair<double, double>> comps;
            for (const auto& iv : j.at("wall").at("components"))
                comps.emplace_back(iv[0].get<double>(), iv[1].get<double>());
            c.wall_components = std::move(comps);
        }

        const auto& s = j.at("schedule");
        c.schedule.regime = regime_from(s.at("regime").get<std::string>());
        if (c.schedule.regime != Regime::no_wall) {
            c.schedule.family = family_from(s.at("family").get<std::string>());
            c.schedule.c = s.value("c", 1.0);
            c.schedule.alpha_const = s.value("alpha", 0.0);
            c.schedule.beta = s.value("beta", 0.5);
            const std::string cm = s.value("crossing_mode", std::string("geometric"));
            if (cm == "geometric")
                c.schedule.crossing_mode = CrossingMode::geometric;
            else if (cm == "trapdoor")
                c.schedule.crossing_mode = CrossingMode::trapdoor;
            else
                throw ConfigError("schedule.crossing_mode: unknown value '" + cm + "'");
        }

        c.n = j.at("n").get<std::int64_t>();
        c.samples = j.at("samples").get<std::int64_t>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.grid_N = j.value("grid_N", 10000);
        c.t0 = j.value("t0", 0.0);
        c.count_wall_hits = j.value("count_wall_hits", false);
        c.threads = j.value("threads", 0);
        c.out_dir = j.value("out", std::string("out"));
        c.max_free_path = j.value("max_free_path", 0.0);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.schedule.horizon = c.n;
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["lattice"]["boundary_mode"] =
        lattice.boundary_mode == BoundaryMode::vertical_torus ? "vertical_torus"
                                                              : "reflecting_strip";
    auto& disks = j["lattice"]["disks"];
    disks = nlohmann::json::array();
    for (const auto& d : lattice.cell_disks)
        disks.push_back({d.center.x, d.center.y, d.radius});
    if (wall_components) {
        auto& comps = j["wall"]["components"];
        comps = nlohmann::json::array();
        for (const auto& [lo, hi] : *wall_components) comps.push_back({lo, hi});
    }
    j["schedule"]["regime"] = regime_name(schedule.regime);
    if (schedule.regime != Regime::no_wall) {
        j["schedule"]["family"] = family_name(schedule.family);
        j["schedule"]["c"] = schedule.c;
        j["schedule"]["alpha"] = schedule.alpha_const;
        j["schedule"]["beta"] = schedule.beta;
        j["schedule"]["crossing_mode"] =
            schedule.crossing_mode == CrossingMode::geometric ? "geometric"
                                                              : "trapdoor";
    }
    j["n"] = n;
    j["samples"] = samples;
    j["seed"] = seed;
    j["grid_N"] = grid_N;
    j["t0"] = t0;
    j["count_wall_hits"] = count_wall_hits;
    j["threads"] = threads;
    j["out"] = out_dir;
    j["max_free_path"] = max_free_path;
    return j;
}

std::string ExperimentConfig::canonical() const { return to_json().dump(); }

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string ExperimentConfig::config_hash() const {
    // threads and out dir do not affect results; exclude them from the hash
    nlohmann::json j = to_json();
    j.erase("threads");
    j.erase("out");
    std::ostringstream os;
    os << std::hex << fnv1a64(j.dump());
    return os.str();
}

double ExperimentConfig::qrbm_t0() const {
    return t0 > 0.0 ? t0 : 1.0 / std::sqrt(static_cast<double>(grid_N));
}

LorentzConfig ExperimentConfig::build_lorentz() {
    LorentzConfig cfg = LorentzConfig::make(lattice, count_wall_hits, max_free_path);
    if (max_free_path <= 0.0) max_free_path = cfg.max_free_path;
    if (wall_components) {
        const WallConfig given = WallConfig::from_components(*wall_components);
        if (given.components.size() != cfg.wall.components.size())
            throw ConfigError("wall.components does not match the lattice");
        for (std::size_t i = 0; i < given.components.size(); ++i) {
            if (std::abs(given.components[i].first - cfg.wall.components[i].first) >
                    1e-9 ||
                std::abs(given.components[i].second - cfg.wall.components[i].second) >
                    1e-9)
                throw ConfigError("wall.components does not match the lattice");
        }
    }
    schedule.horizon = n;
    if (schedule.regime != Regime::no_wall) schedule.validate(cfg.wall);
    return cfg;
}

ExperimentConfig default_fixture() {
    ExperimentConfig c;
    c.lattice.boundary_mode = BoundaryMode::vertical_torus;
    c.lattice.cell_disks = {
        {{0.0, 0.0}, 0.08},
        {{0.25, 0.275}, 0.22},
        {{0.75, 0.275}, 0.22},
        {{0.5, 0.705}, 0.24},
    };
    c.wall_components = {{{0.08, 0.92}}};
    c.schedule.regime = Regime::no_wall;
    c.n = 10000;
    c.samples = 1000;
    c.seed = 1;
    c.grid_N = 10000;
    // certified by validate_finite_horizon on this lattice; see configs/
    c.max_free_path = 2.5;
    return c;
}

}  // namespace lorentz
