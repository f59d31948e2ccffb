#include "turncp/estimate.hpp"

#include <cmath>

namespace turncp::estimate {

using ordpat::Pattern;

const std::array<Pattern, 4>& turning_patterns() {
    static const std::array<Pattern, 4> patterns = {
        Pattern({0, 2, 1}), Pattern({2, 0, 1}), Pattern({1, 2, 0}), Pattern({1, 0, 2})};
    return patterns;
}

std::map<Pattern, double> pattern_frequencies(std::span<const double> series, int order) {
    const ordpat::PatternCounts counts = ordpat::count_patterns(series, order);
    std::map<Pattern, double> freq;
    for (const auto& [pattern, count] : counts.counts)
        freq.emplace(pattern, static_cast<double>(count) / static_cast<double>(counts.total_windows));
    return freq;
}

double turning_rate(std::span<const double> epoch) {
    if (epoch.size() < 3) throw InvalidInputError("epoch must hold at least 3 values");
    const std::size_t windows = epoch.size() - 2;
    std::size_t turns = 0;
    for (std::size_t i = 0; i < windows; ++i)
        turns += ordpat::is_turning(epoch[i], epoch[i + 1], epoch[i + 2]) ? 1 : 0;
    return static_cast<double>(turns) / static_cast<double>(windows);
}

std::vector<double> turning_indicators(std::span<const double> series) {
    if (series.size() < 3) throw InvalidInputError("series must hold at least 3 values");
    std::vector<double> indicators(series.size() - 2);
    for (std::size_t i = 0; i + 2 < series.size(); ++i)
        indicators[i] = ordpat::is_turning(series[i], series[i + 1], series[i + 2]) ? 1.0 : 0.0;
    return indicators;
}

TurningRateSeries turning_rate_series(std::span<const double> series, int block_m) {
    if (block_m < 1) throw InvalidInputError("block_m must be >= 1");
    const std::size_t block_len = static_cast<std::size_t>(block_m) + 2;
    if (series.size() < block_len)
        throw InvalidInputError("series shorter than one block of " + std::to_string(block_len) +
                                " samples");
    TurningRateSeries out;
    out.block_m = block_m;
    out.source_length = series.size();
    const std::size_t n_b = series.size() / block_len;
    out.values.reserve(n_b);
    for (std::size_t j = 0; j < n_b; ++j)
        out.values.push_back(turning_rate(series.subspan(j * block_len, block_len)));
    return out;
}

double permutation_entropy(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidInputError("q must lie in [0, 1]");
    double entropy = 0.0;
    if (q > 0.0) entropy += q * std::log(4.0 / q);
    if (q < 1.0) entropy += (1.0 - q) * std::log(2.0 / (1.0 - q));
    return entropy;
}

double plug_in_long_run_variance(std::span<const double> series, int max_lag) {
    if (max_lag < 0) throw InvalidInputError("max_lag must be >= 0");
    const std::size_t n = series.size();
    if (n <= static_cast<std::size_t>(max_lag))
        throw InvalidInputError("series must be longer than max_lag");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double total = 0.0;
    for (int lag = 0; lag <= max_lag; ++lag) {
        double acc = 0.0;
        for (std::size_t t = 0; t + lag < n; ++t)
            acc += (series[t] - mean) * (series[t + static_cast<std::size_t>(lag)] - mean);
        const double cov = acc / static_cast<double>(n);
        total += (lag == 0) ? cov : 2.0 * cov;
    }
    return total;
}

SpectralCentroid spectral_centroid_check(std::span<const double> series) {
    if (series.size() < 3) throw InvalidInputError("series must hold at least 3 values");
    SpectralCentroid result;
    result.mean_q = turning_rate(series);
    result.cos_pi_q = std::cos(M_PI * result.mean_q);

    const std::size_t n = series.size() - 1;
    std::vector<double> increments(n);
    for (std::size_t i = 0; i < n; ++i) increments[i] = series[i + 1] - series[i];
    double mean = 0.0;
    for (double v : increments) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = increments[i] - mean;
        var += d * d;
        if (i + 1 < n) cov += d * (increments[i + 1] - mean);
    }
    result.rho1 = (var > 0.0) ? cov / var : 0.0;
    return result;
}

}  // namespace turncp::estimate
