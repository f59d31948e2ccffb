#include "turncp/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "turncp/series_io.hpp"

namespace turncp::linproc {

using nlohmann::json;

void to_json(json& j, const NoiseSpec& spec) {
    switch (spec.family) {
        case NoiseSpec::Family::gaussian:
            j = json{{"family", "gaussian"}, {"mean", spec.mean}, {"stddev", spec.stddev}};
            break;
        case NoiseSpec::Family::student_t:
            j = json{{"family", "student_t"}, {"nu", spec.nu}};
            break;
        case NoiseSpec::Family::laplace:
            j = json{{"family", "laplace"}, {"location", spec.location}, {"scale", spec.scale}};
            break;
    }
}

void from_json(const json& j, NoiseSpec& spec) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "gaussian") {
        spec = NoiseSpec::gaussian(j.value("mean", 0.0), j.value("stddev", 1.0));
    } else if (family == "student_t") {
        spec = NoiseSpec::student_t(j.at("nu").get<double>());
    } else if (family == "laplace") {
        spec = NoiseSpec::laplace(j.value("location", 0.0), j.at("scale").get<double>());
    } else {
        throw ConfigError("unknown noise family '" + family + "'");
    }
}

void to_json(json& j, const Model& model) {
    if (const auto* ma = std::get_if<MaModel>(&model)) {
        j = json{{"type", "ma"}, {"theta", ma->theta}};
    } else if (const auto* ar = std::get_if<ArModel>(&model)) {
        j = json{{"type", "ar"}, {"phi", ar->phi}};
    } else {
        const auto& fa = std::get<FarimaModel>(model);
        j = json{{"type", "farima"}, {"d", fa.d}, {"truncation", fa.truncation}};
    }
}

void from_json(const json& j, Model& model) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "ma") {
        model = MaModel{j.value("theta", std::vector<double>{})};
    } else if (type == "ar") {
        model = ArModel{j.value("phi", std::vector<double>{})};
    } else if (type == "farima") {
        FarimaModel fa;
        fa.d = j.at("d").get<double>();
        fa.truncation = j.value("truncation", 10000);
        model = fa;
    } else {
        throw ConfigError("unknown model type '" + type + "'");
    }
}

void to_json(json& j, const LinearProcessSpec& spec) {
    j = json{{"noise", spec.noise}, {"model", spec.model}, {"burn_in", spec.burn_in}};
}

void from_json(const json& j, LinearProcessSpec& spec) {
    spec.noise = j.at("noise").get<NoiseSpec>();
    spec.model = j.at("model").get<Model>();
    spec.burn_in = j.value("burn_in", 1000);
    spec.validate();
}

void to_json(json& j, const BreakSpec& spec) {
    j = json{{"pre", spec.pre}, {"post", spec.post}, {"break_fraction", spec.break_fraction}};
}

void from_json(const json& j, BreakSpec& spec) {
    spec.pre = j.at("pre").get<LinearProcessSpec>();
    spec.post = j.at("post").get<LinearProcessSpec>();
    spec.break_fraction = j.at("break_fraction").get<double>();
    spec.validate();
}

}  // namespace turncp::linproc

namespace turncp::cpd {

using nlohmann::json;

void to_json(json& j, const NullQuantileTable& table) {
    json quantiles = json::object();
    for (const auto& [alpha, value] : table.quantiles)
        quantiles[io::format_double(alpha)] = value;
    j = json{{"kind", to_string(table.kind)},
             {"grid_size", table.grid_size},
             {"replications", table.replications},
             {"seed", table.seed},
             {"quantiles", quantiles},
             {"sample", table.sample}};
}

void from_json(const json& j, NullQuantileTable& table) {
    table.kind = statistic_kind_from_string(j.at("kind").get<std::string>());
    table.grid_size = j.at("grid_size").get<int>();
    table.replications = j.at("replications").get<int>();
    table.seed = j.at("seed").get<std::uint64_t>();
    table.quantiles.clear();
    for (const auto& [key, value] : j.at("quantiles").items()) {
        double alpha = 0.0;
        const auto result = std::from_chars(key.data(), key.data() + key.size(), alpha);
        if (result.ec != std::errc() || result.ptr != key.data() + key.size())
            throw ConfigError("malformed quantile key '" + key + "'");
        table.quantiles[alpha] = value.get<double>();
    }
    table.sample = j.value("sample", std::vector<double>{});
    if (!std::is_sorted(table.sample.begin(), table.sample.end()))
        throw ConfigError("quantile table sample must be sorted");
}

void to_json(json& j, const ChangePointReport& report) {
    j = json{{"statistic", report.statistic},
             {"statistic_kind", to_string(report.statistic_kind)},
             {"critical_value", report.critical_value},
             {"p_value", report.p_value},
             {"reject", report.reject},
             {"argmax_block", report.argmax_block},
             {"estimated_sample_index", report.estimated_sample_index},
             {"alpha", report.alpha},
             {"block_m", report.block_m},
             {"n_blocks", report.n_blocks}};
}

void from_json(const json& j, ChangePointReport& report) {
    report.statistic = j.at("statistic").get<double>();
    report.statistic_kind = statistic_kind_from_string(j.at("statistic_kind").get<std::string>());
    report.critical_value = j.at("critical_value").get<double>();
    report.p_value = j.at("p_value").get<double>();
    report.reject = j.at("reject").get<bool>();
    report.argmax_block = j.at("argmax_block").get<std::size_t>();
    report.estimated_sample_index = j.at("estimated_sample_index").get<std::size_t>();
    report.alpha = j.at("alpha").get<double>();
    report.block_m = j.value("block_m", 0);
    report.n_blocks = j.value("n_blocks", std::size_t{0});
}

void save_quantile_table(const NullQuantileTable& table, const std::filesystem::path& path) {
    const json j = table;
    io::write_file_atomic(path, j.dump(2) + "\n");
}

NullQuantileTable load_quantile_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open quantile table '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed quantile table '" + path.string() + "': " + e.what());
    }
    return j.get<NullQuantileTable>();
}

}  // namespace turncp::cpd
