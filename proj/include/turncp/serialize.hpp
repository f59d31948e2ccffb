#pragma once

#include <filesystem>

#include <json.hpp>

#include "turncp/cpd.hpp"
#include "turncp/linproc.hpp"

// JSON conversions for the configuration and report types; the document
// schemas are described in docs/formats.md.

namespace turncp::linproc {

void to_json(nlohmann::json& j, const NoiseSpec& spec);
void from_json(const nlohmann::json& j, NoiseSpec& spec);

void to_json(nlohmann::json& j, const Model& model);
void from_json(const nlohmann::json& j, Model& model);

void to_json(nlohmann::json& j, const LinearProcessSpec& spec);
void from_json(const nlohmann::json& j, LinearProcessSpec& spec);

void to_json(nlohmann::json& j, const BreakSpec& spec);
void from_json(const nlohmann::json& j, BreakSpec& spec);

}  // namespace turncp::linproc

namespace turncp::cpd {

void to_json(nlohmann::json& j, const NullQuantileTable& table);
void from_json(const nlohmann::json& j, NullQuantileTable& table);

void to_json(nlohmann::json& j, const ChangePointReport& report);
void from_json(const nlohmann::json& j, ChangePointReport& report);

void save_quantile_table(const NullQuantileTable& table, const std::filesystem::path& path);
NullQuantileTable load_quantile_table(const std::filesystem::path& path);

}  // namespace turncp::cpd
