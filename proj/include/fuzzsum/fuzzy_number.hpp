#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fuzzsum {

/// Closed real interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

inline constexpr std::size_t kDefaultLevelCount = 101;

/// Absolute tolerance used for level-wise equality and order comparisons.
inline constexpr double kLevelTolerance = 1e-12;

/// Number of uniformly spaced membership levels, 0 and 1 included.
struct LevelGridPolicy {
    std::size_t level_count = kDefaultLevelCount;

    /// Throws std::invalid_argument when level_count < 2.
    void validate() const;
};

/**
 * A fuzzy number stored as its alpha-cut ladder.
 *
 * Level i sits at alpha = i / (level_count - 1), so the first entry is the
 * support (alpha = 0) and the last one the core (alpha = 1). The ladder is
 * immutable once built; every constructor path checks that cuts are proper
 * intervals and that they nest as alpha grows.
 */
class FuzzyNumber {
public:
    /// Builds from cuts on the uniform grid. Throws std::invalid_argument
    /// on fewer than two levels, non-finite endpoints, lo > hi, or broken nesting.
    static FuzzyNumber from_cuts(std::vector<Interval> cuts);

    std::size_t level_count() const noexcept { return cuts_.size(); }
    double alpha(std::size_t level) const noexcept;
    const Interval& cut(std::size_t level) const { return cuts_.at(level); }
    std::span<const Interval> cuts() const noexcept { return cuts_; }

    /// Cut at an arbitrary alpha in [0, 1], interpolating endpoints linearly
    /// between grid levels.
    Interval cut_at(double alpha) const;

    const Interval& support() const noexcept { return cuts_.front(); }
    const Interval& core() const noexcept { return cuts_.back(); }

    /// Same number on a grid with `level_count` levels.
    FuzzyNumber resampled(std::size_t level_count) const;

    /// True when the ladder passes every representation invariant.
    bool satisfies_invariants() const noexcept;

private:
    explicit FuzzyNumber(std::vector<Interval> cuts) : cuts_(std::move(cuts)) {}

    friend FuzzyNumber add(const FuzzyNumber&, const FuzzyNumber&);
    friend FuzzyNumber scale(double, const FuzzyNumber&);
    friend FuzzyNumber crisp(double, LevelGridPolicy);
    friend FuzzyNumber triangular(double, double, double, LevelGridPolicy);

    std::vector<Interval> cuts_;
};

/// The embedding r -> r-bar: every cut is [r, r].
FuzzyNumber crisp(double r, LevelGridPolicy policy = {});

/// Cut at alpha is [center - (1 - alpha) left, center + (1 - alpha) right].
FuzzyNumber triangular(double center, double left_spread, double right_spread,
                       LevelGridPolicy policy = {});

/// Level-wise interval sum. Mixed grids are resampled to the finer one.
FuzzyNumber add(const FuzzyNumber& x, const FuzzyNumber& y);

/// Level-wise scaling; endpoints swap when c < 0.
FuzzyNumber scale(double c, const FuzzyNumber& x);

/// x + crisp(shift). This is the only subtraction provided.
FuzzyNumber translate(const FuzzyNumber& x, double shift);

/// sup over levels of max(|lo_x - lo_y|, |hi_x - hi_y|).
double distance(const FuzzyNumber& x, const FuzzyNumber& y);

/// x <= y in the level-wise endpoint order (within kLevelTolerance).
bool partial_leq(const FuzzyNumber& x, const FuzzyNumber& y);

/// Level-wise equality within `tol`.
bool approx_equal(const FuzzyNumber& x, const FuzzyNumber& y, double tol = kLevelTolerance);

struct Lemma1Result {
    bool metric_side = false;  ///< d(x, y) <= eps
    bool order_side = false;   ///< x - eps <= y <= x + eps
};

/// Evaluates both sides of the metric/order equivalence. Throws on eps <= 0.
Lemma1Result lemma1_check(const FuzzyNumber& x, const FuzzyNumber& y, double eps);

inline FuzzyNumber operator+(const FuzzyNumber& x, const FuzzyNumber& y) { return add(x, y); }
inline FuzzyNumber operator*(double c, const FuzzyNumber& x) { return scale(c, x); }

}  // namespace fuzzsum
