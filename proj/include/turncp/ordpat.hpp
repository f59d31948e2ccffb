#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "turncp/errors.hpp"

namespace turncp::ordpat {

// Windows longer than this are rejected; (order+1)! must stay enumerable.
inline constexpr int kMaxWindowLength = 8;

// The ordinal pattern of `order+1` consecutive values: entry j is the
// ascending rank of the j-th value (0 = smallest). Equal values are ranked by
// position, the later index receiving the higher rank.
class Pattern {
public:
    explicit Pattern(std::vector<int> ranks);

    int order() const { return static_cast<int>(ranks_.size()) - 1; }
    const std::vector<int>& ranks() const { return ranks_; }

    // Index order that sorts the window values descending (ties: later index
    // first). Element k is the position holding rank order()-k.
    std::vector<int> descending_sequence() const;

    std::string str() const;  // "(0,2,1)"

    friend bool operator==(const Pattern& a, const Pattern& b) { return a.ranks_ == b.ranks_; }
    friend auto operator<=>(const Pattern& a, const Pattern& b) { return a.ranks_ <=> b.ranks_; }

private:
    std::vector<int> ranks_;
};

// Integer matrix V such that the pattern occurs at a window exactly when
// V * increments <= 0 componentwise. Always invertible; entries in {-1,0,1}.
class PatternMatrix {
public:
    PatternMatrix(Pattern pattern, std::vector<int> row_major);

    const Pattern& pattern() const { return pattern_; }
    int dim() const { return dim_; }
    int at(int row, int col) const { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
    const std::vector<int>& entries() const { return entries_; }

    long long determinant() const;  // exact integer cofactor expansion

    // True iff every component of V * increments is <= 0.
    bool matches(std::span<const double> increments) const;

private:
    Pattern pattern_;
    int dim_;
    std::vector<int> entries_;
};

struct PatternCounts {
    int order = 0;
    std::map<Pattern, long long> counts;
    long long total_windows = 0;
};

// Pattern of a single window (length >= 2, finite values).
Pattern pattern_of(std::span<const double> window);

// All (order+1)! patterns in lexicographic rank order; 1 <= order <= kMaxWindowLength-1.
std::vector<Pattern> enumerate_patterns(int order);

// The V matrix of a pattern, built from its descending index sequence.
PatternMatrix pattern_matrix(const Pattern& pattern);

// Membership test through the matrix characterization; increments.size()
// must equal pattern.order().
bool pattern_at_via_matrix(const Pattern& pattern, std::span<const double> increments);

// Slide a window of length order+1 with stride 1 over the series and count
// each pattern; total_windows = series.size() - order.
PatternCounts count_patterns(std::span<const double> series, int order);

// Order-3 fast path: true when the middle value is a (tie-rule) local
// extremum, i.e. the window's pattern is one of the four non-monotone ones.
bool is_turning(double a, double b, double c);

}  // namespace turncp::ordpat
