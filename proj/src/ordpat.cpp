#include "turncp/ordpat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace turncp::ordpat {

namespace {

// Strict total order on window positions: by value, ties by index. Equal
// values therefore rank in index order, giving the later index the higher rank.
inline bool position_less(const double* values, int i, int j) {
    return values[i] < values[j] || (values[i] == values[j] && i < j);
}

void ranks_into(const double* values, int length, int* ranks) {
    for (int i = 0; i < length; ++i) {
        int rank = 0;
        for (int j = 0; j < length; ++j) {
            if (j != i && position_less(values, j, i)) ++rank;
        }
        ranks[i] = rank;
    }
}

long long det_recursive(const std::vector<long long>& m, int n) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    long long det = 0;
    std::vector<long long> minor(static_cast<std::size_t>(n - 1) * (n - 1));
    for (int col = 0; col < n; ++col) {
        if (m[static_cast<std::size_t>(col)] == 0) continue;
        int idx = 0;
        for (int row = 1; row < n; ++row) {
            for (int c = 0; c < n; ++c) {
                if (c == col) continue;
                minor[idx++] = m[static_cast<std::size_t>(row) * n + c];
            }
        }
        const long long sign = (col % 2 == 0) ? 1 : -1;
        det += sign * m[static_cast<std::size_t>(col)] * det_recursive(minor, n - 1);
    }
    return det;
}

}  // namespace

Pattern::Pattern(std::vector<int> ranks) : ranks_(std::move(ranks)) {
    const int length = static_cast<int>(ranks_.size());
    if (length < 2) throw InvalidInputError("pattern needs at least 2 ranks");
    if (length > kMaxWindowLength)
        throw InvalidInputError("pattern window length exceeds maximum of " +
                                std::to_string(kMaxWindowLength));
    std::vector<bool> seen(ranks_.size(), false);
    for (int r : ranks_) {
        if (r < 0 || r >= length || seen[static_cast<std::size_t>(r)])
            throw InvalidInputError("ranks must be a permutation of 0.." + std::to_string(length - 1));
        seen[static_cast<std::size_t>(r)] = true;
    }
}

std::vector<int> Pattern::descending_sequence() const {
    const int r = order();
    std::vector<int> seq(ranks_.size());
    for (int i = 0; i <= r; ++i) seq[static_cast<std::size_t>(r - ranks_[static_cast<std::size_t>(i)])] = i;
    return seq;
}

std::string Pattern::str() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
        if (i) out << ',';
        out << ranks_[i];
    }
    out << ')';
    return out.str();
}

PatternMatrix::PatternMatrix(Pattern pattern, std::vector<int> row_major)
    : pattern_(std::move(pattern)), dim_(pattern_.order()), entries_(std::move(row_major)) {
    if (entries_.size() != static_cast<std::size_t>(dim_) * dim_)
        throw InvalidInputError("pattern matrix has wrong size");
}

long long PatternMatrix::determinant() const {
    std::vector<long long> m(entries_.begin(), entries_.end());
    return det_recursive(m, dim_);
}

bool PatternMatrix::matches(std::span<const double> increments) const {
    if (static_cast<int>(increments.size()) != dim_)
        throw InvalidInputError("expected " + std::to_string(dim_) + " increments, got " +
                                std::to_string(increments.size()));
    for (int row = 0; row < dim_; ++row) {
        double component = 0.0;
        for (int col = 0; col < dim_; ++col) component += at(row, col) * increments[static_cast<std::size_t>(col)];
        if (component > 0.0) return false;
    }
    return true;
}

Pattern pattern_of(std::span<const double> window) {
    const int length = static_cast<int>(window.size());
    if (length < 2) throw InvalidInputError("window must hold at least 2 values");
    if (length > kMaxWindowLength)
        throw InvalidInputError("window length exceeds maximum of " + std::to_string(kMaxWindowLength));
    for (double v : window) {
        if (!std::isfinite(v)) throw InvalidInputError("window contains a non-finite value");
    }
    std::vector<int> ranks(window.size());
    ranks_into(window.data(), length, ranks.data());
    return Pattern(std::move(ranks));
}

std::vector<Pattern> enumerate_patterns(int order) {
    if (order < 1 || order + 1 > kMaxWindowLength)
        throw InvalidInputError("order must be in [1, " + std::to_string(kMaxWindowLength - 1) + "]");
    std::vector<int> ranks(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) ranks[static_cast<std::size_t>(i)] = i;
    std::vector<Pattern> all;
    do {
        all.emplace_back(ranks);
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    return all;
}

PatternMatrix pattern_matrix(const Pattern& pattern) {
    // Product of the difference matrix, the permutation rows picked by the
    // descending sequence, and the cumulative-sum matrix. Row i of the result
    // expresses xi_{sigma_{i+1}} - xi_{sigma_i} in terms of the increments.
    const int r = pattern.order();
    const std::vector<int> sigma = pattern.descending_sequence();
    std::vector<int> entries(static_cast<std::size_t>(r) * r, 0);
    for (int row = 0; row < r; ++row) {
        // Cumulative row for position p has ones at columns 0..p-1.
        const int hi = sigma[static_cast<std::size_t>(row + 1)];
        const int lo = sigma[static_cast<std::size_t>(row)];
        for (int col = 0; col < hi; ++col) entries[static_cast<std::size_t>(row) * r + col] += 1;
        for (int col = 0; col < lo; ++col) entries[static_cast<std::size_t>(row) * r + col] -= 1;
    }
    return PatternMatrix(pattern, std::move(entries));
}

bool pattern_at_via_matrix(const Pattern& pattern, std::span<const double> increments) {
    return pattern_matrix(pattern).matches(increments);
}

PatternCounts count_patterns(std::span<const double> series, int order) {
    if (order < 1 || order + 1 > kMaxWindowLength)
        throw InvalidInputError("order must be in [1, " + std::to_string(kMaxWindowLength - 1) + "]");
    if (series.size() < static_cast<std::size_t>(order) + 1)
        throw InvalidInputError("series holds fewer than order+1 samples");
    for (double v : series) {
        if (!std::isfinite(v)) throw InvalidInputError("series contains a non-finite value");
    }
    PatternCounts result;
    result.order = order;
    result.total_windows = static_cast<long long>(series.size()) - order;
    int ranks[kMaxWindowLength];
    std::vector<int> key(static_cast<std::size_t>(order) + 1);
    for (long long t = 0; t < result.total_windows; ++t) {
        ranks_into(series.data() + t, order + 1, ranks);
        key.assign(ranks, ranks + order + 1);
        ++result.counts[Pattern(key)];
    }
    return result;
}

bool is_turning(double a, double b, double c) {
    const double v[3] = {a, b, c};
    const bool up = position_less(v, 0, 1) && position_less(v, 1, 2);
    const bool down = position_less(v, 2, 1) && position_less(v, 1, 0);
    return !up && !down;
}

}  // namespace turncp::ordpat
