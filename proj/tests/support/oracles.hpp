#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here follows the defining formulas directly (sort-based ranks,
// double/triple summation loops); none of it shares code with the optimized
// paths under test.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace oracles {

// Ranks via explicit argsort with (value, index) keys.
inline std::vector<int> pattern_ranks(std::span<const double> window) {
    std::vector<std::size_t> idx(window.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return window[a] < window[b]; });
    std::vector<int> ranks(window.size());
    for (std::size_t pos = 0; pos < idx.size(); ++pos) ranks[idx[pos]] = static_cast<int>(pos);
    return ranks;
}

inline double cusum(std::span<const double> q, std::size_t k) {
    const auto n = q.size();
    double head = 0.0;
    for (std::size_t j = 0; j < k; ++j) head += q[j];
    double total = 0.0;
    for (double v : q) total += v;
    return std::abs(head - (static_cast<double>(k) / static_cast<double>(n)) * total);
}

inline std::pair<double, std::size_t> cusum_max(std::span<const double> q) {
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t k = 1; k < q.size(); ++k) {
        const double c = cusum(q, k);
        if (c > best) {
            best = c;
            arg = k;
        }
    }
    return {best, arg};
}

// Segment mean of q_j..q_k (1-based, inclusive).
inline double segment_mean(std::span<const double> q, std::size_t j, std::size_t k) {
    double acc = 0.0;
    for (std::size_t t = j; t <= k; ++t) acc += q[t - 1];
    return acc / static_cast<double>(k - j + 1);
}

// S_t(j,k) = sum_{h=j}^{t} (q_h - mean(q_j..q_k))
inline double centered_partial_sum(std::span<const double> q, std::size_t t, std::size_t j,
                                   std::size_t k) {
    const double mean = segment_mean(q, j, k);
    double acc = 0.0;
    for (std::size_t h = j; h <= t; ++h) acc += q[h - 1] - mean;
    return acc;
}

inline double self_normalizer(std::span<const double> q, std::size_t k) {
    const std::size_t n = q.size();
    double first = 0.0;
    for (std::size_t t = 1; t <= k; ++t) {
        const double s = centered_partial_sum(q, t, 1, k);
        first += s * s;
    }
    double second = 0.0;
    for (std::size_t t = k + 1; t <= n; ++t) {
        const double s = centered_partial_sum(q, t, k + 1, n);
        second += s * s;
    }
    return (first + second) / static_cast<double>(n);
}

inline std::pair<double, std::size_t> sn_cusum_max(std::span<const double> q) {
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t k = 1; k < q.size(); ++k) {
        const double v2 = self_normalizer(q, k);
        if (v2 <= 0.0) continue;
        const double c = cusum(q, k) / std::sqrt(v2);
        if (c > best) {
            best = c;
            arg = k;
        }
    }
    if (arg == 0) throw std::runtime_error("all normalizers zero");
    return {best, arg};
}

// Kolmogorov distribution K(x) = P(sup|bridge| <= x) via the alternating series.
inline double kolmogorov_cdf(double x) {
    if (x <= 0.0) return 0.0;
    double acc = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        acc += (k % 2 == 1) ? term : -term;
        if (term < 1e-16) break;
    }
    return 1.0 - 2.0 * acc;
}

inline double kolmogorov_quantile(double p) {
    double lo = 0.0, hi = 5.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline double mean(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc / static_cast<double>(x.size());
}

inline double variance(std::span<const double> x) {
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size());
}

inline double autocorrelation(std::span<const double> x, std::size_t lag) {
    const double m = mean(x);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        den += (x[i] - m) * (x[i] - m);
        if (i + lag < x.size()) num += (x[i] - m) * (x[i + lag] - m);
    }
    return num / den;
}

}  // namespace oracles
