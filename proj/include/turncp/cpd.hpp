#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "turncp/errors.hpp"
#include "turncp/estimate.hpp"

namespace turncp::cpd {

enum class StatisticKind { cusum, sn_cusum };

std::string to_string(StatisticKind kind);
StatisticKind statistic_kind_from_string(const std::string& name);

struct StatisticResult {
    double value = 0.0;
    std::size_t argmax = 0;  // smallest maximizing k, 1 <= k <= n_b - 1
};

// max_k | sum_{j<=k} q_j - (k/n_b) sum_j q_j | over k = 1..n_b-1.
StatisticResult cusum_statistic(std::span<const double> values);

// V^2_{k,n_b}: segment-wise centered partial sums squared, averaged over n_b.
double self_normalizer(std::span<const double> values, std::size_t k);

// max_k |CUSUM_k| / sqrt(V^2_{k,n_b}), skipping k with a zero normalizer.
// Shift- and scale-invariant. Throws DegenerateInputError when every
// normalizer vanishes (constant input).
StatisticResult sn_cusum_statistic(std::span<const double> values);

StatisticResult cusum_statistic(const estimate::TurningRateSeries& series);
StatisticResult sn_cusum_statistic(const estimate::TurningRateSeries& series);

// Monte-Carlo sample of the limit law: Brownian motion on a uniform grid,
// evaluated through sup|B(t) - t B(1)| (cusum) or the self-normalized
// functional (sn_cusum; the two integrals as left-point Riemann sums).
struct NullQuantileTable {
    StatisticKind kind = StatisticKind::sn_cusum;
    int grid_size = 0;
    int replications = 0;
    std::uint64_t seed = 0;
    std::map<double, double> quantiles;  // significance alpha -> critical value
    std::vector<double> sample;          // sorted null draws, kept for p-values

    // Empirical (1 - alpha)-quantile; looked up in `quantiles` when present,
    // otherwise computed from the stored sample.
    double critical_value(double alpha) const;

    // Add-one Monte-Carlo p-value: (1 + #{draws >= statistic}) / (1 + reps).
    double p_value(double statistic) const;
};

NullQuantileTable null_quantiles(StatisticKind kind, const std::vector<double>& alphas, int grid_size,
                                 int replications, std::uint64_t seed, int threads = 0);

// Value of the limit functional on one simulated grid path; exposed for tests.
double simulate_limit_statistic(StatisticKind kind, int grid_size, std::uint64_t seed);

struct ChangePointReport {
    double statistic = 0.0;
    StatisticKind statistic_kind = StatisticKind::sn_cusum;
    double critical_value = 0.0;
    double p_value = 1.0;
    bool reject = false;
    std::size_t argmax_block = 0;           // k_hat
    std::size_t estimated_sample_index = 0;  // k_hat * (block_m + 2)
    double alpha = 0.0;
    int block_m = 0;
    std::size_t n_blocks = 0;
};

// Self-normalized test on the turning-rate series of `series`. Needs at
// least 4 blocks; constant series raise DegenerateInputError.
ChangePointReport run_test(std::span<const double> series, int block_m, double alpha,
                           const NullQuantileTable& quantiles);

// Default block size: ceil(n^exponent) with exponent 0.6.
int block_size_from_rule(std::size_t n, double exponent = 0.6);

}  // namespace turncp::cpd
