#include "lorentz/artifacts.hpp"

#include <fstream>

#include <json.hpp>

#include "lorentz/errors.hpp"

namespace lorentz {

namespace fs = std::filesystem;

ArtifactWriter::ArtifactWriter(fs::path root, std::string config_hash)
    : root_(std::move(root)), hash_(std::move(config_hash)) {
    const fs::path summary = root_ / "summary.json";
    if (fs::exists(summary)) {
        std::ifstream in(summary);
        nlohmann::json j;
        try {
            in >> j;
        } catch (...) {
            throw ConfigError("existing summary.json in '" + root_.string() +
                              "' is unreadable; refusing to overwrite");
        }
        if (j.value("config_hash", std::string()) != hash_)
            throw ConfigError("output directory '" + root_.string() +
                              "' holds results of a different config; refusing "
                              "to overwrite");
    }
    fs::create_directories(root_ / "paths");
    fs::create_directories(root_ / "records");
    fs::create_directories(root_ / "reports");
}

ArtifactWriter::~ArtifactWriter() {
    if (committed_) return;
    // partial outputs are removed on failure
    for (const auto& p : created_) {
        std::error_code ec;
        fs::remove(p, ec);
    }
}

std::ofstream ArtifactWriter::open(const fs::path& rel) {
    const fs::path full = root_ / rel;
    std::ofstream out(full);
    if (!out) throw Error("cannot write '" + full.string() + "'");
    created_.push_back(full);
    return out;
}

void ArtifactWriter::write_record_csv(const std::string& name,
                                      const TrajectoryRecord& rec) {
    auto out = open(fs::path("records") / (name + ".csv"));
    out << "# config_hash=" << hash_ << "\n";
    out << "k,kappa,S,L,crossed\n";
    out.precision(17);
    for (std::int64_t k = 1; k <= rec.steps(); ++k)
        out << k << ',' << rec.kappa[k - 1] << ',' << rec.S[k - 1] << ','
            << rec.L[k - 1] << ',' << int(rec.crossed[k - 1]) << '\n';
}

void ArtifactWriter::write_path_csv(const std::string& name,
                                    const PathFunction& path) {
    auto out = open(fs::path("paths") / (name + ".csv"));
    out << "# config_hash=" << hash_ << "\n";
    out << "t,value\n";
    out.precision(17);
    for (std::size_t i = 0; i < path.t.size(); ++i)
        out << path.t[i] << ',' << path.v[i] << '\n';
}

void ArtifactWriter::write_reports_json(const std::string& name,
                                        const std::vector<TestReport>& reports,
                                        std::uint64_t seed) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json e;
        e["name"] = r.name;
        e["statistic"] = r.statistic;
        e["threshold"] = r.threshold;
        if (r.p_value) e["p_value"] = *r.p_value;
        e["pass"] = r.pass;
        e["seed"] = seed;
        e["config_hash"] = hash_;
        j.push_back(e);
    }
    auto out = open(fs::path("reports") / (name + ".json"));
    out << j.dump(2) << '\n';
}

void ArtifactWriter::write_summary_json(const std::string& body_json) {
    nlohmann::json j = nlohmann::json::parse(body_json);
    j["config_hash"] = hash_;
    auto out = open("summary.json");
    out << j.dump(2) << '\n';
}

}  // namespace lorentz
