#include "turncp/manifest.hpp"

#include <chrono>
#include <fstream>

#include "turncp/errors.hpp"
#include "turncp/series_io.hpp"

namespace turncp::manifest {

void to_json(nlohmann::json& j, const RunManifest& manifest) {
    j = nlohmann::json{{"command", manifest.command},
                       {"argv", manifest.argv},
                       {"config", manifest.config},
                       {"master_seed", manifest.master_seed},
                       {"started_at", manifest.started_at},
                       {"finished_at", manifest.finished_at},
                       {"outputs", manifest.outputs},
                       {"version", manifest.version}};
}

void from_json(const nlohmann::json& j, RunManifest& manifest) {
    manifest.command = j.at("command").get<std::string>();
    manifest.argv = j.at("argv").get<std::vector<std::string>>();
    manifest.config = j.value("config", nlohmann::json::object());
    manifest.master_seed = j.value("master_seed", std::uint64_t{0});
    manifest.started_at = j.value("started_at", std::string{});
    manifest.finished_at = j.value("finished_at", std::string{});
    manifest.outputs = j.value("outputs", std::vector<std::string>{});
    manifest.version = j.value("version", std::string{});
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    const nlohmann::json j = manifest;
    io::write_file_atomic(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed manifest '" + path.string() + "': " + e.what());
    }
    return j.get<RunManifest>();
}

std::filesystem::path manifest_path_for(const std::filesystem::path& primary_output) {
    std::filesystem::path p = primary_output;
    p += ".manifest.json";
    return p;
}

}  // namespace turncp::manifest
