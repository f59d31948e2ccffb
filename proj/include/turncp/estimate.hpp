#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "turncp/ordpat.hpp"

namespace turncp::estimate {

// The four order-3 patterns with a strict interior local extremum.
const std::array<ordpat::Pattern, 4>& turning_patterns();

// Relative frequency of each observed pattern; frequencies sum to one.
std::map<ordpat::Pattern, double> pattern_frequencies(std::span<const double> series, int order);

// Fraction of the epoch's sliding order-3 windows whose pattern is a turning
// pattern. An epoch of m+2 values yields m windows; epoch.size() >= 3.
double turning_rate(std::span<const double> epoch);

// 0/1 turning indicator for every order-3 window of the series.
std::vector<double> turning_indicators(std::span<const double> series);

struct TurningRateSeries {
    std::vector<double> values;       // one turning rate per block, each in [0,1]
    int block_m = 0;                  // windows per block; block length is block_m + 2
    std::size_t source_length = 0;

    std::size_t n_b() const { return values.size(); }
};

// Partition the series into floor(n / (m+2)) consecutive disjoint blocks of
// m+2 samples (tail discarded) and compute the turning rate of each.
TurningRateSeries turning_rate_series(std::span<const double> series, int block_m);

// Entropy of the order-3 pattern distribution as a function of the turning
// rate alone: q log(4/q) + (1-q) log(2/(1-q)), with 0 log(x/0) = 0.
double permutation_entropy(double q);

// Truncated plug-in estimate: sample variance plus twice the sample
// autocovariances up to max_lag (1/n normalization). Harness oracle only;
// the change-point test itself is self-normalized.
double plug_in_long_run_variance(std::span<const double> series, int max_lag);

struct SpectralCentroid {
    double mean_q = 0.0;    // turning rate of the whole series
    double cos_pi_q = 0.0;  // cos(pi * mean_q)
    double rho1 = 0.0;      // lag-1 sample autocorrelation of the increments
};

// For stationary Gaussian data cos(pi q) matches the lag-1 increment
// autocorrelation; this computes both sides from one series.
SpectralCentroid spectral_centroid_check(std::span<const double> series);

}  // namespace turncp::estimate
