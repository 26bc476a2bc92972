#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lorentz/artifacts.hpp"
#include "lorentz/config.hpp"
#include "lorentz/ensemble.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/limit_processes.hpp"
#include "lorentz/stats.hpp"
#include "lorentz/trajectory.hpp"
#include "lorentz/verify.hpp"
#include "lorentz/walk.hpp"

namespace {

using namespace lorentz;

struct CommonFlags {
    std::string config_path;
    std::int64_t seed = -1;
    std::int64_t samples = -1;
    std::int64_t n = -1;
    int threads = -1;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "experiment config file (JSON)");
    cmd->add_option("--seed", f.seed, "master seed override");
    cmd->add_option("--samples", f.samples, "sample count override");
    cmd->add_option("--n", f.n, "trajectory length override");
    cmd->add_option("--threads", f.threads, "worker threads override");
    cmd->add_option("--out", f.out, "output directory override");
}

ExperimentConfig load_config(const CommonFlags& f) {
    ExperimentConfig cfg = f.config_path.empty()
                               ? default_fixture()
                               : ExperimentConfig::from_file(f.config_path);
    if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
    if (f.samples >= 0) cfg.samples = f.samples;
    if (f.n >= 0) {
        cfg.n = f.n;
        cfg.schedule.horizon = f.n;
    }
    if (f.threads >= 0) cfg.threads = f.threads;
    if (!f.out.empty()) cfg.out_dir = f.out;
    return cfg;
}

// per-trajectory records and ensemble summary for both simulators; a handful
// of full records go to records/, scaled paths to paths/
int simulate(ExperimentConfig cfg, bool billiard) {
    const int threads = cfg.threads > 0 ? cfg.threads : default_threads();
    LorentzConfig geom;
    WalkConfig walk;
    if (billiard) {
        geom = cfg.build_lorentz();
    } else {
        if (cfg.schedule.regime == Regime::no_wall)
            throw ConfigError("the walk needs regime shrinking or double_array");
        walk.regime = cfg.schedule.regime;
        walk.schedule = cfg.schedule;
        walk.n = cfg.n;
        walk.validate();
    }

    ArtifactWriter artifacts(cfg.out_dir, cfg.config_hash());
    const std::int64_t keep_records = std::min<std::int64_t>(cfg.samples, 8);

    std::vector<double> S_end(cfg.samples), L_end(cfg.samples), cross(cfg.samples);
    std::vector<TrajectoryRecord> kept(keep_records);
    parallel_for_samples(cfg.samples, threads, [&](std::int64_t i) {
        Rng geo(substream_seed(cfg.seed, static_cast<std::uint64_t>(i), 0xA0));
        Rng holes(substream_seed(cfg.seed, static_cast<std::uint64_t>(i), 0xA1));
        TrajectoryRecord rec =
            billiard ? run_trajectory(geo, holes, geom, cfg.schedule, cfg.n)
                     : run_walk(geo, walk);
        S_end[i] = rec.S.back();
        L_end[i] = rec.L.back();
        cross[i] = static_cast<double>(rec.crossing_steps.size());
        if (i < keep_records) kept[i] = std::move(rec);
    });

    for (std::int64_t i = 0; i < keep_records; ++i) {
        const std::string tag = "sample_" + std::to_string(i);
        artifacts.write_record_csv(tag, kept[i]);
        artifacts.write_path_csv(tag + "_scaled",
                                 billiard ? scaled_path(kept[i], cfg.n)
                                          : walk_scaled_path(kept[i], cfg.n));
        artifacts.write_path_csv(tag + "_localtime", local_time_path(kept[i], cfg.n));
    }

    nlohmann::json summary;
    summary["command"] = billiard ? "simulate-lorentz" : "simulate-walk";
    summary["samples"] = cfg.samples;
    summary["n"] = cfg.n;
    summary["seed"] = cfg.seed;
    summary["mean_S_over_sqrt_n"] =
        pairwise_mean(S_end) / std::sqrt(static_cast<double>(cfg.n));
    summary["sigma_hat"] = estimate_sigma(S_end, cfg.n);
    summary["mean_L_over_sqrt_n"] =
        pairwise_mean(L_end) / std::sqrt(static_cast<double>(cfg.n));
    summary["mean_crossings"] = pairwise_mean(cross);
    artifacts.write_summary_json(summary.dump());
    artifacts.commit();
    std::cout << "wrote " << cfg.out_dir << " (config " << cfg.config_hash()
              << ")\n";
    return 0;
}

int sample_limit(ExperimentConfig cfg) {
    const int threads = cfg.threads > 0 ? cfg.threads : default_threads();
    ArtifactWriter artifacts(cfg.out_dir, cfg.config_hash());
    const std::int64_t keep = std::min<std::int64_t>(cfg.samples, 8);
    const double c = cfg.schedule.regime == Regime::no_wall ? 0.0 : cfg.schedule.c;

    std::vector<double> q1(cfg.samples);
    std::vector<PathFunction> kept_q(keep), kept_l(keep);
    parallel_for_samples(cfg.samples, threads, [&](std::int64_t i) {
        Rng rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(i), 0xB0));
        QrbmSample s = sample_QRBM_detailed(rng, cfg.grid_N, c, 1.0, cfg.qrbm_t0());
        q1[i] = s.q.v.back();
        if (i < keep) {
            kept_q[i] = std::move(s.q);
            kept_l[i] = std::move(s.bmlt.local_time);
        }
    });
    for (std::int64_t i = 0; i < keep; ++i) {
        artifacts.write_path_csv("qrbm_" + std::to_string(i), kept_q[i]);
        artifacts.write_path_csv("localtime_" + std::to_string(i), kept_l[i]);
    }
    nlohmann::json summary;
    summary["command"] = "sample-limit";
    summary["samples"] = cfg.samples;
    summary["grid_N"] = cfg.grid_N;
    summary["seed"] = cfg.seed;
    summary["t0"] = cfg.qrbm_t0();
    summary["c"] = c;
    summary["endpoint_sd"] = estimate_sigma(q1, 1);
    artifacts.write_summary_json(summary.dump());
    artifacts.commit();
    std::cout << "wrote " << cfg.out_dir << " (config " << cfg.config_hash()
              << ")\n";
    return 0;
}

int verify(ExperimentConfig cfg) {
    const int threads = cfg.threads > 0 ? cfg.threads : default_threads();
    const auto reports = run_acceptance(cfg.seed, threads, std::cout);
    ArtifactWriter artifacts(cfg.out_dir, cfg.config_hash());
    artifacts.write_reports_json("acceptance", reports, cfg.seed);
    nlohmann::json summary;
    summary["command"] = "verify";
    summary["seed"] = cfg.seed;
    std::int64_t failures = 0;
    for (const auto& r : reports)
        if (!r.pass) ++failures;
    summary["criteria"] = reports.size();
    summary["failures"] = failures;
    artifacts.write_summary_json(summary.dump());
    artifacts.commit();
    std::cout << (failures == 0 ? "all criteria passed\n"
                                : std::to_string(failures) + " criteria failed\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lorentz strip dynamics with shrinking wall holes: simulators, "
                 "limit-process samplers and the verification suite"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto* lorentz_cmd =
        app.add_subcommand("simulate-lorentz", "billiard trajectory ensembles");
    add_common(lorentz_cmd, flags);
    auto* walk_cmd =
        app.add_subcommand("simulate-walk", "random-walk analogue ensembles");
    add_common(walk_cmd, flags);
    auto* limit_cmd =
        app.add_subcommand("sample-limit", "qRBM/QRBM limit-process samples");
    add_common(limit_cmd, flags);
    auto* verify_cmd =
        app.add_subcommand("verify", "run the acceptance suite (exit 0 iff green)");
    add_common(verify_cmd, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = load_config(flags);
        if (lorentz_cmd->parsed()) return simulate(std::move(cfg), true);
        if (walk_cmd->parsed()) return simulate(std::move(cfg), false);
        if (limit_cmd->parsed()) return sample_limit(std::move(cfg));
        if (verify_cmd->parsed()) return verify(std::move(cfg));
    } catch (const lorentz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
