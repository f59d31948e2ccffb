#include "turncp/cpd.hpp"

#include <algorithm>
#include <cmath>

#include "turncp/parallel.hpp"
#include "turncp/rng.hpp"

namespace turncp::cpd {

namespace {

// Prefix-sum workspace shared by the one-pass statistic evaluations. All
// arrays are indexed 1..n with a zero sentinel at 0.
struct Prefix {
    std::vector<double> p;    // partial sums of the values
    std::vector<double> p2;   // partial sums of P_t^2
    std::vector<double> tp;   // partial sums of t * P_t
    std::vector<double> d;    // partial sums of P_t
    std::vector<double> t1;   // partial sums of t
    std::vector<double> t2;   // partial sums of t^2

    explicit Prefix(std::span<const double> values) {
        const std::size_t n = values.size();
        p.assign(n + 1, 0.0);
        p2.assign(n + 1, 0.0);
        tp.assign(n + 1, 0.0);
        d.assign(n + 1, 0.0);
        t1.assign(n + 1, 0.0);
        t2.assign(n + 1, 0.0);
        for (std::size_t t = 1; t <= n; ++t) {
            p[t] = p[t - 1] + values[t - 1];
            p2[t] = p2[t - 1] + p[t] * p[t];
            tp[t] = tp[t - 1] + static_cast<double>(t) * p[t];
            d[t] = d[t - 1] + p[t];
            t1[t] = t1[t - 1] + static_cast<double>(t);
            t2[t] = t2[t - 1] + static_cast<double>(t) * static_cast<double>(t);
        }
    }

    std::size_t n() const { return p.size() - 1; }

    double cusum_at(std::size_t k) const {
        return std::abs(p[k] - (static_cast<double>(k) / static_cast<double>(n())) * p[n()]);
    }

    // sum_{t=1}^{k} (P_t - (t/k) P_k)^2
    double first_segment(std::size_t k) const {
        const double c = p[k] / static_cast<double>(k);
        return p2[k] - 2.0 * c * tp[k] + c * c * t2[k];
    }

    // sum_{t=k+1}^{n} ((P_t - P_k) - ((t-k)/(n-k)) (P_n - P_k))^2
    double second_segment(std::size_t k) const {
        const std::size_t nn = n();
        const double w = static_cast<double>(nn - k);
        const double c = (p[nn] - p[k]) / w;
        const double a = p[k] - static_cast<double>(k) * c;
        const double sum_p2 = p2[nn] - p2[k];
        const double sum_p = d[nn] - d[k];
        const double sum_tp = tp[nn] - tp[k];
        const double sum_t = t1[nn] - t1[k];
        const double sum_t2 = t2[nn] - t2[k];
        return sum_p2 - 2.0 * a * sum_p - 2.0 * c * sum_tp + a * a * w + 2.0 * a * c * sum_t +
               c * c * sum_t2;
    }

    double normalizer(std::size_t k) const {
        const double v2 = (first_segment(k) + second_segment(k)) / static_cast<double>(n());
        return v2 < 0.0 ? 0.0 : v2;  // clamp tiny negative round-off
    }
};

}  // namespace

std::string to_string(StatisticKind kind) {
    return kind == StatisticKind::cusum ? "cusum" : "sn_cusum";
}

StatisticKind statistic_kind_from_string(const std::string& name) {
    if (name == "cusum") return StatisticKind::cusum;
    if (name == "sn_cusum") return StatisticKind::sn_cusum;
    throw ConfigError("unknown statistic kind '" + name + "'");
}

StatisticResult cusum_statistic(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw InvalidInputError("cusum needs at least 2 values");
    const Prefix prefix(values);
    StatisticResult best{-1.0, 0};
    for (std::size_t k = 1; k < n; ++k) {
        const double candidate = prefix.cusum_at(k);
        if (candidate > best.value) best = {candidate, k};
    }
    return best;
}

double self_normalizer(std::span<const double> values, std::size_t k) {
    const std::size_t n = values.size();
    if (n < 2) throw InvalidInputError("self normalizer needs at least 2 values");
    if (k < 1 || k > n - 1) throw InvalidInputError("k must satisfy 1 <= k <= n_b - 1");
    return Prefix(values).normalizer(k);
}

StatisticResult sn_cusum_statistic(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) throw InvalidInputError("self-normalized cusum needs at least 4 values");
    const Prefix prefix(values);
    StatisticResult best{-1.0, 0};
    for (std::size_t k = 1; k < n; ++k) {
        const double v2 = prefix.normalizer(k);
        if (v2 <= 0.0) continue;
        const double candidate = prefix.cusum_at(k) / std::sqrt(v2);
        if (candidate > best.value) best = {candidate, k};
    }
    if (best.argmax == 0)
        throw DegenerateInputError("no variability: every self-normalizer is zero");
    return best;
}

StatisticResult cusum_statistic(const estimate::TurningRateSeries& series) {
    return cusum_statistic(std::span<const double>(series.values));
}

StatisticResult sn_cusum_statistic(const estimate::TurningRateSeries& series) {
    return sn_cusum_statistic(std::span<const double>(series.values));
}

double simulate_limit_statistic(StatisticKind kind, int grid_size, std::uint64_t seed) {
    if (grid_size < 2) throw ConfigError("grid_size must be >= 2");
    rng::Engine engine(seed);
    std::vector<double> increments(static_cast<std::size_t>(grid_size));
    const double step_sd = 1.0 / std::sqrt(static_cast<double>(grid_size));
    for (auto& v : increments) v = engine.normal() * step_sd;
    if (kind == StatisticKind::cusum) return cusum_statistic(increments).value;
    // The discrete statistic on the increments coincides with the limit
    // functional evaluated by left-point Riemann sums on the grid path.
    return sn_cusum_statistic(increments).value;
}

double NullQuantileTable::critical_value(double alpha) const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
    const auto it = quantiles.find(alpha);
    if (it != quantiles.end()) return it->second;
    if (sample.empty())
        throw ConfigError("quantile table holds neither alpha=" + std::to_string(alpha) +
                          " nor the null sample");
    const double level = 1.0 - alpha;
    const auto n = static_cast<std::ptrdiff_t>(sample.size());
    std::ptrdiff_t idx =
        static_cast<std::ptrdiff_t>(std::ceil(level * static_cast<double>(n))) - 1;
    idx = std::clamp<std::ptrdiff_t>(idx, 0, n - 1);
    return sample[static_cast<std::size_t>(idx)];
}

double NullQuantileTable::p_value(double statistic) const {
    if (sample.empty()) throw ConfigError("quantile table lacks the null sample");
    const auto first_ge = std::lower_bound(sample.begin(), sample.end(), statistic);
    const auto count_ge = static_cast<double>(sample.end() - first_ge);
    return (1.0 + count_ge) / (1.0 + static_cast<double>(sample.size()));
}

NullQuantileTable null_quantiles(StatisticKind kind, const std::vector<double>& alphas, int grid_size,
                                 int replications, std::uint64_t seed, int threads) {
    if (grid_size < 100) throw ConfigError("grid_size must be >= 100");
    if (replications < 1000) throw ConfigError("replications must be >= 1000");
    for (double alpha : alphas) {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alphas must lie in (0, 1]");
    }
    NullQuantileTable table;
    table.kind = kind;
    table.grid_size = grid_size;
    table.replications = replications;
    table.seed = seed;
    table.sample.resize(static_cast<std::size_t>(replications));
    parallel_for(table.sample.size(), threads, [&](std::size_t r) {
        table.sample[r] = simulate_limit_statistic(kind, grid_size, rng::derive_seed(seed, r));
    });
    std::sort(table.sample.begin(), table.sample.end());
    for (double alpha : alphas) table.quantiles[alpha] = table.critical_value(alpha);
    return table;
}

int block_size_from_rule(std::size_t n, double exponent) {
    if (!(exponent > 0.0 && exponent < 1.0)) throw ConfigError("block rule exponent must lie in (0,1)");
    const int m = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), exponent)));
    return std::max(m, 1);
}

ChangePointReport run_test(std::span<const double> series, int block_m, double alpha,
                           const NullQuantileTable& quantiles) {
    if (quantiles.kind != StatisticKind::sn_cusum)
        throw ConfigError("run_test requires an sn_cusum quantile table");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    const estimate::TurningRateSeries trs = estimate::turning_rate_series(series, block_m);
    if (trs.n_b() < 4)
        throw InvalidInputError("need at least 4 blocks; got " + std::to_string(trs.n_b()) +
                                " (reduce block size)");
    const StatisticResult stat = sn_cusum_statistic(trs);
    ChangePointReport report;
    report.statistic = stat.value;
    report.statistic_kind = StatisticKind::sn_cusum;
    report.critical_value = quantiles.critical_value(alpha);
    report.p_value = quantiles.p_value(stat.value);
    report.reject = stat.value > report.critical_value;
    report.argmax_block = stat.argmax;
    report.estimated_sample_index = stat.argmax * (static_cast<std::size_t>(block_m) + 2);
    report.alpha = alpha;
    report.block_m = block_m;
    report.n_blocks = trs.n_b();
    return report;
}

}  // namespace turncp::cpd
