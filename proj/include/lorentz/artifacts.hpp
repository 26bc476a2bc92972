#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "lorentz/path.hpp"
#include "lorentz/stats.hpp"
#include "lorentz/trajectory.hpp"

namespace lorentz {

/// Output-directory session. Creates paths/, records/ and reports/ under
/// root, stamps every file with the config hash, and refuses to mix outputs
/// of different configs in one directory. Files created through the session
/// are removed again if it is abandoned without commit().
class ArtifactWriter {
  public:
    ArtifactWriter(std::filesystem::path root, std::string config_hash);
    ~ArtifactWriter();

    void write_record_csv(const std::string& name, const TrajectoryRecord& rec);
    void write_path_csv(const std::string& name, const PathFunction& path);
    void write_reports_json(const std::string& name,
                            const std::vector<TestReport>& reports,
                            std::uint64_t seed);
    void write_summary_json(const std::string& body_json);

    const std::filesystem::path& root() const { return root_; }
    void commit() { committed_ = true; }

  private:
    std::ofstream open(const std::filesystem::path& rel);

    std::filesystem::path root_;
    std::string hash_;
    std::vector<std::filesystem::path> created_;
    bool committed_ = false;
};

}  // namespace lorentz
