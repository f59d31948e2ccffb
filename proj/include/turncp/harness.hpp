#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "turncp/cpd.hpp"
#include "turncp/linproc.hpp"
#include "turncp/ordpat.hpp"

// Monte-Carlo experiment runner. Every experiment is deterministic in its
// master seed: replication r of cell c draws from the stream
// derive_seed(derive_seed(master_seed, c), r), so results do not depend on
// scheduling order.

namespace turncp::harness {

using Process = std::variant<linproc::LinearProcessSpec, linproc::BreakSpec>;

// n increments from the process, integrated to a series of n+1 samples.
std::vector<double> simulate_series(const Process& process, std::size_t n, std::uint64_t seed);

struct BlockRule {
    std::optional<int> fixed_m;
    double exponent = 0.6;

    int resolve(std::size_t series_length) const;
};

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LogLogFit fit_log_log(std::span<const double> x, std::span<const double> y);

// Two-sample Kolmogorov-Smirnov distance sup_x |F_a(x) - F_b(x)|.
double ks_distance(std::span<const double> a, std::span<const double> b);

// ---- Convergence-rate experiment ------------------------------------------

struct RateConfig {
    std::string name = "rate";
    linproc::LinearProcessSpec process;
    std::vector<int> pattern_ranks{0, 1, 2};
    std::string regime = "srd";  // "srd" or "lrd"
    double d = 0.0;              // lrd: must equal the process memory parameter
    std::vector<std::size_t> sample_sizes;
    int replications = 2000;
    // When false the simulated increments themselves form the observed
    // series, so the pattern sees their differences.
    bool integrate_series = true;
    std::uint64_t master_seed = 1;
    int threads = 0;

    void validate() const;
};

struct RateFitResult {
    std::vector<std::size_t> sample_sizes;
    std::vector<double> std_devs;
    double fitted_exponent = 0.0;
    double r_squared = 0.0;
    double target_exponent = 0.0;       // -1/2 (srd) or -(1/2 - d) (lrd)
    double reference_probability = 0.0;  // pattern probability from a 10x-size run
};

// Standard deviation of the pattern-frequency estimator across replications
// for each sample size, with a least-squares log-log fit of the decay rate.
RateFitResult clt_rate_experiment(const RateConfig& config);

// ---- Gaussian symmetry experiment ------------------------------------------

struct SymmetryConfig {
    std::string name = "symmetry";
    linproc::LinearProcessSpec process;
    std::size_t n = 10000;
    int replications = 200;
    std::uint64_t master_seed = 1;
    int threads = 0;

    void validate() const;
};

struct SymmetryRow {
    ordpat::Pattern pattern;
    double mean_frequency = 0.0;
    double std_error = 0.0;  // MC standard error of the mean
};

// Mean frequency of each order-3 pattern over replications; for stationary
// Gaussian data the two monotone patterns agree and the four turning
// patterns agree.
std::vector<SymmetryRow> gaussian_symmetry_experiment(const SymmetryConfig& config);

// ---- Power experiment -------------------------------------------------------

struct PowerConfig {
    std::string name = "power";
    double phi1 = 0.4;
    std::vector<double> h_values{0.4};
    std::vector<std::size_t> sample_sizes{500, 1000, 2000};
    std::vector<double> break_fractions{0.1, 0.25, 0.5};
    std::vector<linproc::NoiseSpec> noises;
    int replications = 1000;
    BlockRule block_rule;
    double alpha = 0.05;
    int burn_in = 1000;
    std::uint64_t master_seed = 1;
    int threads = 0;

    void validate() const;
};

struct PowerCell {
    std::size_t n = 0;
    double h = 0.0;
    double break_fraction = 0.0;
    std::size_t break_index = 0;
    std::string noise;
    int block_m = 0;
    int rejections = 0;
    int replications = 0;
    double rejection_rate = 0.0;
};

// Rejection frequency of the self-normalized test over the (n, h, break,
// noise) grid; h = 0 cells estimate the empirical size.
std::vector<PowerCell> power_table(const PowerConfig& config,
                                   const cpd::NullQuantileTable& quantiles);

std::string render_power_csv(std::span<const PowerCell> cells);

// ---- Spectral-centroid experiment ------------------------------------------

struct CentroidConfig {
    std::string name = "centroid";
    std::vector<linproc::Model> models;
    linproc::NoiseSpec noise;  // identity requires Gaussian noise
    std::size_t n = 1000000;
    int burn_in = 1000;
    std::uint64_t master_seed = 1;

    void validate() const;
};

struct CentroidRow {
    std::string model;
    double mean_q = 0.0;
    double cos_pi_q = 0.0;
    double theoretical_rho1 = 0.0;
};

std::vector<CentroidRow> centroid_experiment(const CentroidConfig& config);

// ---- Null / alternative statistic sample ------------------------------------

struct HistogramConfig {
    std::string name = "histogram";
    std::size_t n = 5000;
    double theta_pre = 0.4;
    std::optional<double> theta_post;  // set to sample under a break
    double break_fraction = 0.5;
    int replications = 1000;
    BlockRule block_rule;
    int burn_in = 1000;
    std::uint64_t master_seed = 1;
    int threads = 0;

    void validate() const;
};

// Sample of the self-normalized statistic over replications of an MA(1)
// series, with or without a coefficient break.
std::vector<double> null_statistic_histogram(const HistogramConfig& config);

// JSON bindings for experiment configs (schemas in docs/formats.md).
void to_json(nlohmann::json& j, const BlockRule& rule);
void from_json(const nlohmann::json& j, BlockRule& rule);
void to_json(nlohmann::json& j, const PowerConfig& config);
void from_json(const nlohmann::json& j, PowerConfig& config);

}  // namespace turncp::harness
