#include "turncp/harness.hpp"

#include <algorithm>
#include <cmath>

#include "turncp/parallel.hpp"
#include "turncp/rng.hpp"
#include "turncp/serialize.hpp"
#include "turncp/series_io.hpp"

namespace turncp::harness {

using linproc::BreakSpec;
using linproc::LinearProcessSpec;
using ordpat::Pattern;

std::vector<double> simulate_series(const Process& process, std::size_t n, std::uint64_t seed) {
    linproc::TimeSeries increments;
    if (const auto* spec = std::get_if<LinearProcessSpec>(&process)) {
        increments = linproc::simulate_increments(*spec, n, seed);
    } else {
        increments = linproc::simulate_with_break(std::get<BreakSpec>(process), n, seed);
    }
    return linproc::integrate(increments, 0.0).samples;
}

int BlockRule::resolve(std::size_t series_length) const {
    if (fixed_m) {
        if (*fixed_m < 1) throw ConfigError("fixed block size must be >= 1");
        return *fixed_m;
    }
    return cpd::block_size_from_rule(series_length, exponent);
}

LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw InvalidInputError("log-log fit needs >= 2 matching points");
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) throw InvalidInputError("log-log fit needs positive data");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw InvalidInputError("ks_distance needs non-empty samples");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double sup = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        sup = std::max(sup, std::abs(static_cast<double>(i) / static_cast<double>(sa.size()) -
                                     static_cast<double>(j) / static_cast<double>(sb.size())));
    }
    return sup;
}

// ---- rate -------------------------------------------------------------------

void RateConfig::validate() const {
    process.validate();
    Pattern pattern(pattern_ranks);  // validates the permutation
    if (regime != "srd" && regime != "lrd") throw ConfigError("regime must be 'srd' or 'lrd'");
    if (replications < 100) throw ConfigError("replications must be >= 100");
    if (sample_sizes.size() < 2) throw ConfigError("need at least 2 sample sizes");
    for (std::size_t i = 1; i < sample_sizes.size(); ++i) {
        if (sample_sizes[i] <= sample_sizes[i - 1])
            throw ConfigError("sample sizes must be strictly increasing");
    }
    const auto* farima = std::get_if<linproc::FarimaModel>(&process.model);
    if (regime == "lrd") {
        if (!integrate_series)
            throw ConfigError("lrd regime requires the integrated series");
        if (farima == nullptr || farima->d != d)
            throw ConfigError("lrd regime requires a farima process with matching d");
    } else if (farima != nullptr && integrate_series) {
        throw ConfigError("srd regime with a farima process needs integrate_series=false");
    }
}

RateFitResult clt_rate_experiment(const RateConfig& config) {
    config.validate();
    const Pattern pattern(config.pattern_ranks);
    const int order = pattern.order();
    const std::size_t n_sizes = config.sample_sizes.size();
    const auto reps = static_cast<std::size_t>(config.replications);

    auto frequency_of = [&](std::size_t n, std::uint64_t seed) {
        const auto increments = linproc::simulate_increments(config.process, n, seed);
        std::vector<double> series = config.integrate_series
                                         ? linproc::integrate(increments, 0.0).samples
                                         : increments.samples;
        const auto counts = ordpat::count_patterns(series, order);
        const auto it = counts.counts.find(pattern);
        const long long hits = (it == counts.counts.end()) ? 0 : it->second;
        return static_cast<double>(hits) / static_cast<double>(counts.total_windows);
    };

    std::vector<std::vector<double>> freq(n_sizes, std::vector<double>(reps, 0.0));
    parallel_for(n_sizes * reps, config.threads, [&](std::size_t task) {
        const std::size_t size_idx = task / reps;
        const std::size_t rep = task % reps;
        const std::uint64_t seed =
            rng::derive_seed(rng::derive_seed(config.master_seed, size_idx + 1), rep);
        freq[size_idx][rep] = frequency_of(config.sample_sizes[size_idx], seed);
    });

    RateFitResult result;
    result.sample_sizes = config.sample_sizes;
    result.std_devs.resize(n_sizes);
    std::vector<double> sizes_as_double(n_sizes);
    for (std::size_t s = 0; s < n_sizes; ++s) {
        double mean = 0.0;
        for (double f : freq[s]) mean += f;
        mean /= static_cast<double>(reps);
        double ss = 0.0;
        for (double f : freq[s]) ss += (f - mean) * (f - mean);
        result.std_devs[s] = std::sqrt(ss / static_cast<double>(reps - 1));
        sizes_as_double[s] = static_cast<double>(config.sample_sizes[s]);
    }

    const LogLogFit fit = fit_log_log(sizes_as_double, result.std_devs);
    result.fitted_exponent = fit.slope;
    result.r_squared = fit.r_squared;
    result.target_exponent = (config.regime == "lrd") ? -(0.5 - config.d) : -0.5;
    result.reference_probability =
        frequency_of(10 * config.sample_sizes.back(), rng::derive_seed(config.master_seed, 0));
    return result;
}

// ---- symmetry ---------------------------------------------------------------

void SymmetryConfig::validate() const {
    process.validate();
    if (n < 10) throw ConfigError("n must be >= 10");
    if (replications < 100) throw ConfigError("replications must be >= 100");
}

std::vector<SymmetryRow> gaussian_symmetry_experiment(const SymmetryConfig& config) {
    config.validate();
    const auto reps = static_cast<std::size_t>(config.replications);
    const std::vector<Pattern> patterns = ordpat::enumerate_patterns(2);
    std::vector<std::vector<double>> freq(reps);
    parallel_for(reps, config.threads, [&](std::size_t rep) {
        const auto increments = linproc::simulate_increments(
            config.process, config.n, rng::derive_seed(config.master_seed, rep));
        const auto series = linproc::integrate(increments, 0.0).samples;
        const auto counts = ordpat::count_patterns(series, 2);
        std::vector<double> row(patterns.size(), 0.0);
        for (std::size_t p = 0; p < patterns.size(); ++p) {
            const auto it = counts.counts.find(patterns[p]);
            if (it != counts.counts.end())
                row[p] = static_cast<double>(it->second) / static_cast<double>(counts.total_windows);
        }
        freq[rep] = std::move(row);
    });

    std::vector<SymmetryRow> rows;
    rows.reserve(patterns.size());
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        double mean = 0.0;
        for (const auto& row : freq) mean += row[p];
        mean /= static_cast<double>(reps);
        double ss = 0.0;
        for (const auto& row : freq) ss += (row[p] - mean) * (row[p] - mean);
        const double sd = std::sqrt(ss / static_cast<double>(reps - 1));
        rows.push_back({patterns[p], mean, sd / std::sqrt(static_cast<double>(reps))});
    }
    return rows;
}

// ---- power ------------------------------------------------------------------

void PowerConfig::validate() const {
    if (!(std::abs(phi1) < 1.0)) throw ConfigError("phi1 must satisfy |phi1| < 1");
    for (double h : h_values) {
        if (!(std::abs(phi1 + h) < 1.0))
            throw ConfigError("phi1 + h must stay inside (-1, 1)");
    }
    if (sample_sizes.empty()) throw ConfigError("sample_sizes must not be empty");
    if (break_fractions.empty()) throw ConfigError("break_fractions must not be empty");
    if (noises.empty()) throw ConfigError("noises must not be empty");
    for (const auto& noise : noises) noise.validate();
    if (replications < 100) throw ConfigError("replications must be >= 100");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
}

std::vector<PowerCell> power_table(const PowerConfig& config,
                                   const cpd::NullQuantileTable& quantiles) {
    config.validate();
    const auto reps = static_cast<std::size_t>(config.replications);
    std::vector<PowerCell> cells;
    std::size_t cell_index = 0;
    for (std::size_t n : config.sample_sizes) {
        for (double h : config.h_values) {
            for (double tau : config.break_fractions) {
                for (const auto& noise : config.noises) {
                    PowerCell cell;
                    cell.n = n;
                    cell.h = h;
                    cell.break_fraction = tau;
                    cell.break_index = static_cast<std::size_t>(static_cast<double>(n) * tau);
                    cell.noise = noise.label();
                    cell.replications = config.replications;

                    LinearProcessSpec pre{noise, linproc::ArModel{{config.phi1}}, config.burn_in};
                    Process process;
                    if (h == 0.0) {
                        process = pre;
                    } else {
                        LinearProcessSpec post{noise, linproc::ArModel{{config.phi1 + h}},
                                               config.burn_in};
                        process = BreakSpec{pre, post, tau};
                    }

                    const std::uint64_t cell_seed = rng::derive_seed(config.master_seed, cell_index);
                    const int block_m = config.block_rule.resolve(n + 1);
                    std::vector<int> rejected(reps, 0);
                    parallel_for(reps, config.threads, [&](std::size_t rep) {
                        const auto series =
                            simulate_series(process, n, rng::derive_seed(cell_seed, rep));
                        const auto report = cpd::run_test(series, block_m, config.alpha, quantiles);
                        rejected[rep] = report.reject ? 1 : 0;
                    });
                    cell.block_m = block_m;
                    for (int r : rejected) cell.rejections += r;
                    cell.rejection_rate =
                        static_cast<double>(cell.rejections) / static_cast<double>(reps);
                    cells.push_back(std::move(cell));
                    ++cell_index;
                }
            }
        }
    }
    return cells;
}

std::string render_power_csv(std::span<const PowerCell> cells) {
    std::string csv = "n,h,break_fraction,break_index,noise,block_m,rejections,replications,"
                      "rejection_rate\n";
    for (const auto& cell : cells) {
        csv += std::to_string(cell.n) + ',' + io::format_double(cell.h) + ',' +
               io::format_double(cell.break_fraction) + ',' + std::to_string(cell.break_index) +
               ",\"" + cell.noise + "\"," + std::to_string(cell.block_m) + ',' +
               std::to_string(cell.rejections) + ',' + std::to_string(cell.replications) + ',' +
               io::format_double(cell.rejection_rate) + '\n';
    }
    return csv;
}

// ---- centroid ---------------------------------------------------------------

void CentroidConfig::validate() const {
    noise.validate();
    if (noise.family != linproc::NoiseSpec::Family::gaussian)
        throw ConfigError("the spectral-centroid identity needs Gaussian noise");
    if (models.empty()) throw ConfigError("models must not be empty");
    if (n < 100) throw ConfigError("n must be >= 100");
    if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
}

std::vector<CentroidRow> centroid_experiment(const CentroidConfig& config) {
    config.validate();
    std::vector<CentroidRow> rows;
    rows.reserve(config.models.size());
    for (std::size_t i = 0; i < config.models.size(); ++i) {
        LinearProcessSpec spec{config.noise, config.models[i], config.burn_in};
        const auto increments =
            linproc::simulate_increments(spec, config.n, rng::derive_seed(config.master_seed, i));
        const auto series = linproc::integrate(increments, 0.0).samples;
        const auto centroid = estimate::spectral_centroid_check(series);
        const nlohmann::json label = config.models[i];
        rows.push_back({label.dump(), centroid.mean_q, centroid.cos_pi_q,
                        linproc::theoretical_rho1(config.models[i])});
    }
    return rows;
}

// ---- histogram --------------------------------------------------------------

void HistogramConfig::validate() const {
    if (n < 100) throw ConfigError("n must be >= 100");
    if (replications < 0) throw ConfigError("replications must be >= 0");
    if (!(break_fraction > 0.0 && break_fraction < 1.0))
        throw ConfigError("break_fraction must lie in (0, 1)");
    if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
}

std::vector<double> null_statistic_histogram(const HistogramConfig& config) {
    config.validate();
    if (config.replications == 0) return {};
    const auto noise = linproc::NoiseSpec::gaussian(0.0, 1.0);
    LinearProcessSpec pre{noise, linproc::MaModel{{config.theta_pre}}, config.burn_in};
    Process process;
    if (config.theta_post) {
        LinearProcessSpec post{noise, linproc::MaModel{{*config.theta_post}}, config.burn_in};
        process = BreakSpec{pre, post, config.break_fraction};
    } else {
        process = pre;
    }
    std::vector<double> stats(static_cast<std::size_t>(config.replications), 0.0);
    parallel_for(stats.size(), config.threads, [&](std::size_t rep) {
        const auto series =
            simulate_series(process, config.n, rng::derive_seed(config.master_seed, rep));
        const int m = config.block_rule.resolve(series.size());
        const auto trs = estimate::turning_rate_series(series, m);
        stats[rep] = cpd::sn_cusum_statistic(trs).value;
    });
    return stats;
}

// ---- JSON bindings ------------------------------------------------------------

void to_json(nlohmann::json& j, const BlockRule& rule) {
    if (rule.fixed_m) {
        j = nlohmann::json{{"fixed_m", *rule.fixed_m}};
    } else {
        j = nlohmann::json{{"exponent", rule.exponent}};
    }
}

void from_json(const nlohmann::json& j, BlockRule& rule) {
    rule = BlockRule{};
    if (j.contains("fixed_m")) {
        rule.fixed_m = j.at("fixed_m").get<int>();
    } else {
        rule.exponent = j.value("exponent", 0.6);
    }
}

void to_json(nlohmann::json& j, const PowerConfig& config) {
    j = nlohmann::json{{"name", config.name},
                       {"phi1", config.phi1},
                       {"h_values", config.h_values},
                       {"sample_sizes", config.sample_sizes},
                       {"break_fractions", config.break_fractions},
                       {"noises", config.noises},
                       {"replications", config.replications},
                       {"block_rule", config.block_rule},
                       {"alpha", config.alpha},
                       {"burn_in", config.burn_in},
                       {"master_seed", config.master_seed},
                       {"threads", config.threads}};
}

void from_json(const nlohmann::json& j, PowerConfig& config) {
    config = PowerConfig{};
    config.name = j.value("name", std::string("power"));
    config.phi1 = j.value("phi1", 0.4);
    if (j.contains("h_values")) config.h_values = j.at("h_values").get<std::vector<double>>();
    if (j.contains("sample_sizes"))
        config.sample_sizes = j.at("sample_sizes").get<std::vector<std::size_t>>();
    if (j.contains("break_fractions"))
        config.break_fractions = j.at("break_fractions").get<std::vector<double>>();
    if (j.contains("noises"))
        config.noises = j.at("noises").get<std::vector<linproc::NoiseSpec>>();
    else
        config.noises = {linproc::NoiseSpec::gaussian(0.0, 1.0)};
    config.replications = j.value("replications", 1000);
    if (j.contains("block_rule")) config.block_rule = j.at("block_rule").get<BlockRule>();
    config.alpha = j.value("alpha", 0.05);
    config.burn_in = j.value("burn_in", 1000);
    config.master_seed = j.value("master_seed", std::uint64_t{1});
    config.threads = j.value("threads", 0);
    config.validate();
}

}  // namespace turncp::harness
