// turncp: turning-rate change-point analysis for time series.
//
// Subcommands: simulate, patterns, turning-rate, detect, quantiles, power,
// replay. Every file-producing run writes a `<output>.manifest.json` holding
// the resolved arguments; `turncp replay` re-executes a manifest and
// reproduces the outputs byte for byte.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "turncp/cpd.hpp"
#include "turncp/harness.hpp"
#include "turncp/manifest.hpp"
#include "turncp/serialize.hpp"
#include "turncp/series_io.hpp"
#include "turncp/version.hpp"

namespace {

using namespace turncp;
using nlohmann::json;

int run_cli(const std::vector<std::string>& args);

constexpr std::uint64_t kDefaultSeed = 1;

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("TURNCP_CACHE_DIR")) return env;
    if (const char* home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "turncp";
    return std::filesystem::path(".") / "turncp-cache";
}

manifest::RunManifest start_manifest(const std::string& command,
                                     const std::vector<std::string>& argv, json config,
                                     std::uint64_t seed) {
    manifest::RunManifest m;
    m.command = command;
    m.argv = argv;
    m.config = std::move(config);
    m.master_seed = seed;
    m.started_at = manifest::utc_timestamp();
    m.version = TURNCP_VERSION;
    return m;
}

void finish_manifest(manifest::RunManifest& m, const std::vector<std::filesystem::path>& outputs) {
    if (outputs.empty()) return;
    m.finished_at = manifest::utc_timestamp();
    m.outputs.clear();
    for (const auto& p : outputs) m.outputs.push_back(p.string());
    manifest::write_manifest(m, manifest::manifest_path_for(outputs.front()));
}

// ---- simulate ----------------------------------------------------------------

struct SimulateArgs {
    std::string model = "ma1";
    double theta = 0.4;
    double theta2 = 0.7;
    double phi = 0.4;
    double phi2 = 0.8;
    double d = 0.3;
    int truncation = 10000;
    double break_frac = 0.5;
    std::string noise = "gaussian";
    double mean = 0.0;
    double sd = 1.0;
    double nu = 2.0;
    double loc = 0.0;
    double scale = 1.0;
    int burn_in = 1000;
    std::size_t n = 0;
    std::uint64_t seed = kDefaultSeed;
    std::string output;
    std::string integrated_output;
};

linproc::NoiseSpec noise_from_args(const SimulateArgs& a) {
    if (a.noise == "gaussian") return linproc::NoiseSpec::gaussian(a.mean, a.sd);
    if (a.noise == "student-t") return linproc::NoiseSpec::student_t(a.nu);
    if (a.noise == "laplace") return linproc::NoiseSpec::laplace(a.loc, a.scale);
    throw ConfigError("unknown noise '" + a.noise + "' (gaussian|student-t|laplace)");
}

harness::Process process_from_args(const SimulateArgs& a) {
    const auto noise = noise_from_args(a);
    auto spec = [&](linproc::Model model) {
        return linproc::LinearProcessSpec{noise, std::move(model), a.burn_in};
    };
    if (a.model == "iid") return spec(linproc::MaModel{{}});
    if (a.model == "ma1") return spec(linproc::MaModel{{a.theta}});
    if (a.model == "ar1") return spec(linproc::ArModel{{a.phi}});
    if (a.model == "farima") return spec(linproc::FarimaModel{a.d, a.truncation});
    if (a.model == "ma1-break")
        return linproc::BreakSpec{spec(linproc::MaModel{{a.theta}}),
                                  spec(linproc::MaModel{{a.theta2}}), a.break_frac};
    if (a.model == "ar1-break")
        return linproc::BreakSpec{spec(linproc::ArModel{{a.phi}}),
                                  spec(linproc::ArModel{{a.phi2}}), a.break_frac};
    throw ConfigError("unknown model '" + a.model +
                      "' (iid|ma1|ar1|farima|ma1-break|ar1-break)");
}

int cmd_simulate(const SimulateArgs& a, const std::vector<std::string>& argv) {
    const harness::Process process = process_from_args(a);
    linproc::TimeSeries increments;
    if (const auto* spec = std::get_if<linproc::LinearProcessSpec>(&process)) {
        increments = linproc::simulate_increments(*spec, a.n, a.seed);
    } else {
        increments = linproc::simulate_with_break(std::get<linproc::BreakSpec>(process), a.n,
                                                  a.seed);
    }

    json config;
    if (const auto* spec = std::get_if<linproc::LinearProcessSpec>(&process)) {
        config["process"] = *spec;
    } else {
        config["process"] = std::get<linproc::BreakSpec>(process);
    }
    config["n"] = a.n;
    config["seed"] = a.seed;
    auto m = start_manifest("simulate", argv, config, a.seed);

    std::vector<std::filesystem::path> outputs;
    io::write_series(a.output, increments.samples, "increment");
    outputs.emplace_back(a.output);
    if (!a.integrated_output.empty()) {
        const auto integrated = linproc::integrate(increments, 0.0);
        io::write_series(a.integrated_output, integrated.samples, "value");
        outputs.emplace_back(a.integrated_output);
    }
    finish_manifest(m, outputs);
    return 0;
}

// ---- patterns ----------------------------------------------------------------

std::string pattern_table_csv(const ordpat::PatternCounts& counts) {
    std::string out = "pattern,count,frequency\n";
    for (const auto& [pattern, count] : counts.counts) {
        out += '"' + pattern.str() + "\"," + std::to_string(count) + ',' +
               io::format_double(static_cast<double>(count) /
                                 static_cast<double>(counts.total_windows)) +
               '\n';
    }
    return out;
}

json pattern_table_json(const ordpat::PatternCounts& counts) {
    json rows = json::array();
    for (const auto& [pattern, count] : counts.counts) {
        rows.push_back({{"pattern", pattern.ranks()},
                        {"count", count},
                        {"frequency", static_cast<double>(count) /
                                          static_cast<double>(counts.total_windows)}});
    }
    return json{{"window_length", counts.order + 1},
                {"total_windows", counts.total_windows},
                {"patterns", rows}};
}

int cmd_patterns(const std::string& input, int window_length, const std::string& format,
                 const std::string& output, const std::vector<std::string>& argv) {
    const auto series = io::read_series(input);
    const auto counts = ordpat::count_patterns(series, window_length - 1);
    const std::string rendered =
        (format == "json") ? pattern_table_json(counts).dump(2) + "\n" : pattern_table_csv(counts);
    if (output.empty()) {
        std::cout << rendered;
        return 0;
    }
    auto m = start_manifest("patterns", argv,
                            json{{"input", input},
                                 {"window_length", window_length},
                                 {"format", format}},
                            0);
    io::write_file_atomic(output, rendered);
    finish_manifest(m, {output});
    return 0;
}

// ---- turning-rate -------------------------------------------------------------

int cmd_turning_rate(const std::string& input, int block_m, const std::string& output,
                     const std::vector<std::string>& argv) {
    const auto series = io::read_series(input);
    const auto trs = estimate::turning_rate_series(series, block_m);
    std::string csv = "block_index,q_hat\n";
    for (std::size_t j = 0; j < trs.values.size(); ++j)
        csv += std::to_string(j + 1) + ',' + io::format_double(trs.values[j]) + '\n';
    auto m = start_manifest("turning-rate", argv,
                            json{{"input", input},
                                 {"block_m", block_m},
                                 {"n_blocks", trs.n_b()},
                                 {"source_length", trs.source_length}},
                            0);
    io::write_file_atomic(output, csv);
    finish_manifest(m, {output});
    return 0;
}

// ---- quantile table handling ---------------------------------------------------

struct QuantileArgs {
    std::string table_file;  // explicit table wins over the cache
    std::string cache_dir;
    int grid = 2000;
    int reps = 50000;
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
};

std::vector<double> default_alphas() { return {0.01, 0.025, 0.05, 0.1}; }

cpd::NullQuantileTable obtain_table(const QuantileArgs& a, double alpha) {
    auto alphas = default_alphas();
    if (std::find(alphas.begin(), alphas.end(), alpha) == alphas.end()) alphas.push_back(alpha);

    if (!a.table_file.empty()) {
        auto table = cpd::load_quantile_table(a.table_file);
        if (table.kind != cpd::StatisticKind::sn_cusum)
            throw ConfigError("quantile table '" + a.table_file + "' is not sn_cusum");
        if (table.sample.empty())
            throw ConfigError("quantile table '" + a.table_file + "' lacks the null sample");
        return table;
    }

    const std::filesystem::path dir =
        a.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(a.cache_dir);
    const std::string name = "sn_cusum-g" + std::to_string(a.grid) + "-r" +
                             std::to_string(a.reps) + "-s" + std::to_string(a.seed) + ".json";
    const std::filesystem::path path = dir / name;
    if (std::filesystem::exists(path)) {
        auto table = cpd::load_quantile_table(path);
        if (table.kind == cpd::StatisticKind::sn_cusum && table.grid_size == a.grid &&
            table.replications == a.reps && table.seed == a.seed && !table.sample.empty()) {
            return table;
        }
        throw ConfigError("cached table '" + path.string() + "' does not match its key");
    }
    auto table = cpd::null_quantiles(cpd::StatisticKind::sn_cusum, alphas, a.grid, a.reps, a.seed,
                                     a.threads);
    cpd::save_quantile_table(table, path);
    return table;
}

// ---- detect --------------------------------------------------------------------

struct DetectArgs {
    std::string input;
    int block_size = 0;             // 0: use the rule
    std::string block_rule = "n^0.6";
    double alpha = 0.05;
    std::string output;
    QuantileArgs quantiles;
};

double exponent_from_rule(const std::string& rule) {
    if (rule.size() < 3 || rule.substr(0, 2) != "n^")
        throw ConfigError("block rule must look like 'n^0.6'");
    try {
        return std::stod(rule.substr(2));
    } catch (const std::exception&) {
        throw ConfigError("block rule must look like 'n^0.6'");
    }
}

int cmd_detect(const DetectArgs& a, const std::vector<std::string>& argv) {
    if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    const auto series = io::read_series(a.input);
    if (series.size() < 4) throw InvalidInputError("series too short for the test");
    const int block_m = a.block_size > 0
                            ? a.block_size
                            : cpd::block_size_from_rule(series.size(), exponent_from_rule(a.block_rule));
    const auto table = obtain_table(a.quantiles, a.alpha);
    const auto report = cpd::run_test(series, block_m, a.alpha, table);

    const json report_json = report;
    std::cout << report_json.dump(2) << "\n";
    if (!a.output.empty()) {
        auto m = start_manifest("detect", argv,
                                json{{"input", a.input},
                                     {"block_m", block_m},
                                     {"alpha", a.alpha},
                                     {"grid_size", table.grid_size},
                                     {"mc_replications", table.replications},
                                     {"mc_seed", table.seed}},
                                table.seed);
        io::write_file_atomic(a.output, report_json.dump(2) + "\n");
        finish_manifest(m, {a.output});
    }
    return report.reject ? 2 : 0;
}

// ---- quantiles ------------------------------------------------------------------

int cmd_quantiles(const std::string& kind_name, std::vector<double> alphas, int grid, int reps,
                  std::uint64_t seed, int threads, const std::string& output,
                  const std::vector<std::string>& argv) {
    const auto kind = cpd::statistic_kind_from_string(kind_name);
    if (alphas.empty()) alphas = default_alphas();
    const auto table = cpd::null_quantiles(kind, alphas, grid, reps, seed, threads);
    auto m = start_manifest("quantiles", argv,
                            json{{"kind", kind_name},
                                 {"alphas", alphas},
                                 {"grid_size", grid},
                                 {"replications", reps},
                                 {"seed", seed}},
                            seed);
    cpd::save_quantile_table(table, output);
    finish_manifest(m, {output});
    for (const auto& [alpha, value] : table.quantiles)
        std::cout << "alpha=" << io::format_double(alpha) << " critical=" << io::format_double(value)
                  << "\n";
    return 0;
}

// ---- power ----------------------------------------------------------------------

int cmd_power(const std::string& config_path, const std::string& output, QuantileArgs qargs,
              int threads, const std::vector<std::string>& argv) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open config '" + config_path + "'");
    json config_json;
    try {
        in >> config_json;
    } catch (const json::exception& e) {
        throw ConfigError("malformed config '" + config_path + "': " + e.what());
    }
    auto config = config_json.get<harness::PowerConfig>();
    if (threads > 0) config.threads = threads;
    qargs.threads = config.threads;
    const auto table = obtain_table(qargs, config.alpha);
    const auto cells = harness::power_table(config, table);

    auto m = start_manifest("power", argv,
                            json{{"power", config},
                                 {"grid_size", table.grid_size},
                                 {"mc_replications", table.replications},
                                 {"mc_seed", table.seed}},
                            config.master_seed);
    io::write_file_atomic(output, harness::render_power_csv(cells));
    finish_manifest(m, {output});
    return 0;
}

// ---- replay ---------------------------------------------------------------------

int cmd_replay(const std::string& manifest_path) {
    const auto m = manifest::read_manifest(manifest_path);
    if (m.argv.empty() || m.argv.front() == "replay")
        throw ConfigError("manifest does not describe a replayable run");
    return run_cli(m.argv);
}

// ---- dispatch ---------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"turning-rate change-point analysis for time series"};
    app.set_version_flag("--version", TURNCP_VERSION);
    app.require_subcommand(1);

    // simulate
    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "simulate a linear increment process");
    simulate->add_option("--model", sim.model, "iid|ma1|ar1|farima|ma1-break|ar1-break");
    simulate->add_option("--theta", sim.theta, "ma1 coefficient");
    simulate->add_option("--theta1", sim.theta, "pre-break ma coefficient");
    simulate->add_option("--theta2", sim.theta2, "post-break ma coefficient");
    simulate->add_option("--phi", sim.phi, "ar1 coefficient");
    simulate->add_option("--phi1", sim.phi, "pre-break ar coefficient");
    simulate->add_option("--phi2", sim.phi2, "post-break ar coefficient");
    simulate->add_option("--d", sim.d, "farima memory parameter, in (0, 1/2)");
    simulate->add_option("--truncation", sim.truncation, "farima moving-average truncation");
    simulate->add_option("--break-frac", sim.break_frac, "break position as a fraction of n");
    simulate->add_option("--noise", sim.noise, "gaussian|student-t|laplace");
    simulate->add_option("--mean", sim.mean, "gaussian mean");
    simulate->add_option("--sd", sim.sd, "gaussian standard deviation");
    simulate->add_option("--nu", sim.nu, "student-t degrees of freedom");
    simulate->add_option("--loc", sim.loc, "laplace location");
    simulate->add_option("--scale", sim.scale, "laplace scale");
    simulate->add_option("--burn-in", sim.burn_in, "warm-up samples to discard");
    simulate->add_option("--n", sim.n, "number of increments")->required();
    simulate->add_option("--seed", sim.seed, "random seed");
    simulate->add_option("--output", sim.output, "increments file")->required();
    simulate->add_option("--integrated-output", sim.integrated_output,
                         "also write the cumulative series");

    // patterns
    std::string pat_input, pat_format = "csv", pat_output;
    int pat_window = 3;
    auto* patterns = app.add_subcommand("patterns", "ordinal pattern counts and frequencies");
    patterns->add_option("--input", pat_input, "single-column series file")->required();
    patterns->add_option("--order", pat_window, "window length (values per pattern)")
        ->check(CLI::Range(2, ordpat::kMaxWindowLength));
    patterns->add_option("--format", pat_format, "csv|json");
    patterns->add_option("--output", pat_output, "write the table here instead of stdout");

    // turning-rate
    std::string tr_input, tr_output;
    int tr_block = 0;
    auto* turning = app.add_subcommand("turning-rate", "blockwise turning-rate series");
    turning->add_option("--input", tr_input, "single-column series file")->required();
    turning->add_option("--block-size", tr_block, "windows per block (m)")->required();
    turning->add_option("--output", tr_output, "two-column csv output")->required();

    // detect
    DetectArgs det;
    auto* detect = app.add_subcommand("detect", "self-normalized turning-rate change-point test");
    detect->add_option("--input", det.input, "single-column series file")->required();
    detect->add_option("--block-size", det.block_size, "windows per block (default: rule)");
    detect->add_option("--block-rule", det.block_rule,
                       "block size rule, e.g. n^0.6 for m = ceil(n^0.6)");
    detect->add_option("--alpha", det.alpha, "significance level");
    detect->add_option("--output", det.output, "write the JSON report here as well");
    detect->add_option("--quantiles", det.quantiles.table_file, "explicit quantile table file");
    detect->add_option("--cache", det.quantiles.cache_dir, "quantile cache directory");
    detect->add_option("--grid", det.quantiles.grid, "Monte-Carlo grid size");
    detect->add_option("--mc-reps", det.quantiles.reps, "Monte-Carlo replications");
    detect->add_option("--mc-seed", det.quantiles.seed, "Monte-Carlo seed");
    detect->add_option("--threads", det.quantiles.threads, "worker threads (0 = auto)");

    // quantiles
    std::string q_kind = "sn_cusum", q_output;
    std::vector<double> q_alphas;
    int q_grid = 2000, q_reps = 50000, q_threads = 0;
    std::uint64_t q_seed = kDefaultSeed;
    auto* quantiles = app.add_subcommand("quantiles", "Monte-Carlo critical value table");
    quantiles->add_option("--kind", q_kind, "cusum|sn_cusum");
    quantiles->add_option("--alphas", q_alphas, "significance levels")->delimiter(',');
    quantiles->add_option("--grid", q_grid, "grid size");
    quantiles->add_option("--reps", q_reps, "replications");
    quantiles->add_option("--seed", q_seed, "seed");
    quantiles->add_option("--threads", q_threads, "worker threads (0 = auto)");
    quantiles->add_option("--output", q_output, "table file")->required();

    // power
    std::string pw_config, pw_output;
    QuantileArgs pw_quantiles;
    int pw_threads = 0;
    auto* power = app.add_subcommand("power", "rejection-rate grid from a JSON config");
    power->add_option("--config", pw_config, "experiment config (json)")->required();
    power->add_option("--output", pw_output, "csv output")->required();
    power->add_option("--quantiles", pw_quantiles.table_file, "explicit quantile table file");
    power->add_option("--cache", pw_quantiles.cache_dir, "quantile cache directory");
    power->add_option("--grid", pw_quantiles.grid, "Monte-Carlo grid size");
    power->add_option("--mc-reps", pw_quantiles.reps, "Monte-Carlo replications");
    power->add_option("--mc-seed", pw_quantiles.seed, "Monte-Carlo seed");
    power->add_option("--threads", pw_threads, "worker threads (0 = auto)");

    // replay
    std::string rp_manifest;
    auto* replay = app.add_subcommand("replay", "re-run a recorded manifest");
    replay->add_option("--manifest", rp_manifest, "manifest file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);  // the vector overload consumes reversed args
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (simulate->parsed()) return cmd_simulate(sim, args);
    if (patterns->parsed()) return cmd_patterns(pat_input, pat_window, pat_format, pat_output, args);
    if (turning->parsed()) return cmd_turning_rate(tr_input, tr_block, tr_output, args);
    if (detect->parsed()) return cmd_detect(det, args);
    if (quantiles->parsed())
        return cmd_quantiles(q_kind, q_alphas, q_grid, q_reps, q_seed, q_threads, q_output, args);
    if (power->parsed()) return cmd_power(pw_config, pw_output, pw_quantiles, pw_threads, args);
    if (replay->parsed()) return cmd_replay(rp_manifest);
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        return run_cli(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
