#pragma once

#include "ecograph/error.hpp"
#include "ecograph/identity.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace ecograph {

struct PipelineConfig {
    std::filesystem::path corpus;
    std::filesystem::path affiliations;
    std::filesystem::path releases;
    std::filesystem::path output_dir;
    std::size_t top_n = 10;
    bool strict = false;
    bool committed_only = false;

    /// Relative paths are resolved against `base_dir`.
    static PipelineConfig from_json(const nlohmann::json& config, const std::filesystem::path& base_dir);
    static PipelineConfig load(const std::filesystem::path& path);

    /// Throws ConfigError when an input is missing; creates output_dir.
    void validate() const;
};

/// Raised in strict mode when some contributor emails have no affiliation.
class UnresolvedContributorsError : public Error {
public:
    explicit UnresolvedContributorsError(std::vector<UnresolvedEntry> report);

    const std::vector<UnresolvedEntry>& report() const noexcept { return report_; }

private:
    std::vector<UnresolvedEntry> report_;
};

struct ManifestEntry {
    std::string path;  // relative to the output directory, '/' separators
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct PipelineResult {
    std::vector<ManifestEntry> files;
    std::filesystem::path manifest_path;
};

inline constexpr const char* kManifestName = "manifest.json";

/// import -> resolve -> per-release networks -> metrics -> analytics -> export.
/// On failure every file written by this run is removed and no manifest is
/// left behind; the error propagates.
PipelineResult run_pipeline(const PipelineConfig& config);

} // namespace ecograph
