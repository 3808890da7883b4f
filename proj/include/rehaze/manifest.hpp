#ifndef REHAZE_MANIFEST_HPP
#define REHAZE_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rehaze/scattering.hpp"

namespace rehaze {

inline constexpr int kManifestSchema = 1;
inline constexpr const char* kToolkitVersion = "1.0.0";

/// One generated sample. Files written by the run are recorded relative to
/// the manifest's directory; input files are recorded as absolute paths.
struct ManifestEntry {
    std::optional<std::string> clean_path;
    std::string hazy_path;
    std::vector<std::string> rehazy_paths;
    std::string depth_path;
    Airlight airlight;
    std::optional<double> beta;
    std::vector<double> delta_betas;
    std::uint64_t seed = 0;
    SceneKind profile = SceneKind::indoor;
    /// Box-downsampled clean targets, when requested.
    std::optional<std::string> target_half;
    std::optional<std::string> target_quarter;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct Manifest {
    int schema = kManifestSchema;
    std::string toolkit_version = kToolkitVersion;
    std::string command;
    std::uint64_t run_seed = 0;
    SceneProfile profile;
    std::vector<ManifestEntry> entries;

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

nlohmann::json to_json(const Manifest& manifest);

/// Throws IoError on schema mismatch or missing fields.
Manifest manifest_from_json(const nlohmann::json& j);

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);

/// Every file an entry refers to, resolved against the manifest directory.
std::vector<std::filesystem::path> referenced_files(const ManifestEntry& entry,
                                                    const std::filesystem::path& manifest_dir);

}  // namespace rehaze

#endif  // REHAZE_MANIFEST_HPP
