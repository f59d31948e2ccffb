#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace turncp::manifest {

// Written atomically alongside every file-producing CLI run; holds enough to
// replay the run exactly (the resolved argv and seed).
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;  // program name excluded
    nlohmann::json config;          // resolved configuration echo
    std::uint64_t master_seed = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;
    std::string version;
};

void to_json(nlohmann::json& j, const RunManifest& manifest);
void from_json(const nlohmann::json& j, RunManifest& manifest);

std::string utc_timestamp();

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

// Conventional location: <primary output>.manifest.json
std::filesystem::path manifest_path_for(const std::filesystem::path& primary_output);

}  // namespace turncp::manifest
