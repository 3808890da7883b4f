#include "rehaze/manifest.hpp"

#include <fstream>

namespace rehaze {
namespace {

using nlohmann::json;

json range_json(const Range& r) { return json::array({r.min, r.max}); }

Range range_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json entry_json(const ManifestEntry& e) {
    json params = {{"A", e.airlight.rgb}, {"delta_betas", e.delta_betas}, {"seed", e.seed}};
    if (e.beta) {
        params["beta"] = *e.beta;
    }
    json j = {{"hazy_path", e.hazy_path},
              {"rehazy_paths", e.rehazy_paths},
              {"depth_path", e.depth_path},
              {"params", params},
              {"profile", to_string(e.profile)}};
    if (e.clean_path) {
        j["clean_path"] = *e.clean_path;
    }
    if (e.target_half || e.target_quarter) {
        json targets = json::object();
        if (e.target_half) {
            targets["half"] = *e.target_half;
        }
        if (e.target_quarter) {
            targets["quarter"] = *e.target_quarter;
        }
        j["targets"] = targets;
    }
    return j;
}

ManifestEntry entry_from(const json& j) {
    ManifestEntry e;
    if (j.contains("clean_path")) {
        e.clean_path = j.at("clean_path").get<std::string>();
    }
    e.hazy_path = j.at("hazy_path").get<std::string>();
    e.rehazy_paths = j.at("rehazy_paths").get<std::vector<std::string>>();
    e.depth_path = j.at("depth_path").get<std::string>();
    const json& params = j.at("params");
    e.airlight.rgb = params.at("A").get<std::array<double, 3>>();
    if (params.contains("beta")) {
        e.beta = params.at("beta").get<double>();
    }
    e.delta_betas = params.at("delta_betas").get<std::vector<double>>();
    e.seed = params.at("seed").get<std::uint64_t>();
    e.profile = parse_scene_kind(j.at("profile").get<std::string>());
    if (j.contains("targets")) {
        const json& targets = j.at("targets");
        if (targets.contains("half")) {
            e.target_half = targets.at("half").get<std::string>();
        }
        if (targets.contains("quarter")) {
            e.target_quarter = targets.at("quarter").get<std::string>();
        }
    }
    return e;
}

}  // namespace

json to_json(const Manifest& manifest) {
    json entries = json::array();
    for (const auto& e : manifest.entries) {
        entries.push_back(entry_json(e));
    }
    return {{"schema", manifest.schema},
            {"toolkit_version", manifest.toolkit_version},
            {"command", manifest.command},
            {"run_seed", manifest.run_seed},
            {"profile",
             {{"kind", to_string(manifest.profile.kind)},
              {"a_range", range_json(manifest.profile.a_range)},
              {"beta_range", range_json(manifest.profile.beta_range)},
              {"delta_beta_range", range_json(manifest.profile.delta_beta_range)}}},
            {"entries", entries}};
}

Manifest manifest_from_json(const json& j) {
    try {
        Manifest m;
        m.schema = j.at("schema").get<int>();
        if (m.schema != kManifestSchema) {
            throw IoError("unsupported manifest schema " + std::to_string(m.schema));
        }
        m.toolkit_version = j.at("toolkit_version").get<std::string>();
        m.command = j.at("command").get<std::string>();
        m.run_seed = j.at("run_seed").get<std::uint64_t>();
        const json& p = j.at("profile");
        m.profile.kind = parse_scene_kind(p.at("kind").get<std::string>());
        m.profile.a_range = range_from(p.at("a_range"));
        m.profile.beta_range = range_from(p.at("beta_range"));
        m.profile.delta_beta_range = range_from(p.at("delta_beta_range"));
        for (const auto& e : j.at("entries")) {
            m.entries.push_back(entry_from(e));
        }
        return m;
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed manifest: ") + e.what());
    }
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write manifest '" + path.string() + "'");
    }
    out << to_json(manifest).dump(2) << '\n';
}

Manifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read manifest '" + path.string() + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("malformed manifest '" + path.string() + "': " + e.what());
    }
    return manifest_from_json(j);
}

std::vector<std::filesystem::path> referenced_files(const ManifestEntry& entry,
                                                    const std::filesystem::path& manifest_dir) {
    // operator/ keeps absolute right-hand sides unchanged.
    std::vector<std::filesystem::path> files;
    if (entry.clean_path) {
        files.push_back(manifest_dir / *entry.clean_path);
    }
    files.push_back(manifest_dir / entry.depth_path);
    files.push_back(manifest_dir / entry.hazy_path);
    for (const auto& p : entry.rehazy_paths) {
        files.push_back(manifest_dir / p);
    }
    if (entry.target_half) {
        files.push_back(manifest_dir / *entry.target_half);
    }
    if (entry.target_quarter) {
        files.push_back(manifest_dir / *entry.target_quarter);
    }
    return files;
}

}  // namespace rehaze
