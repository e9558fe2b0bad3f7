#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuzzsum {

using Index = std::uint64_t;

/// Raised when an index lies past the end of a table-backed scheme or weight sequence.
class HorizonError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Raised when a ratio of weighted totals would divide by zero.
class DegenerateWindowError : public std::runtime_error {
public:
    DegenerateWindowError(Index n, const std::string& what)
        : std::runtime_error(what), n_(n) {}
    Index n() const noexcept { return n_; }

private:
    Index n_;
};

/// Finite surrogate for n -> infinity.
struct HorizonPolicy {
    Index n_max = 4096;
    Index trend_window = 2048;

    static HorizonPolicy up_to(Index n_max) { return {n_max, n_max / 2}; }
    void validate() const;
};

/**
 * The index windows [beta_n, gamma_n] selected at each step n.
 *
 * Both maps are evaluated lazily. A scheme read from a table knows its last
 * row and raises HorizonError past it.
 */
class BetaGammaScheme {
public:
    using Map = std::function<Index(Index)>;

    BetaGammaScheme(Map beta, Map gamma, std::string label,
                    std::optional<Index> last_n = std::nullopt);

    Index beta(Index n) const;
    Index gamma(Index n) const;
    const std::string& label() const noexcept { return label_; }
    std::optional<Index> last_n() const noexcept { return last_n_; }

private:
    void check(Index n) const;

    Map beta_;
    Map gamma_;
    std::string label_;
    std::optional<Index> last_n_;
};

/**
 * Positive weights t_k with O(1) window sums.
 *
 * Built-in weights carry closed-form window sums. Table and function-backed
 * weights precompute prefix sums up to their capacity.
 */
class WeightSequence {
public:
    static WeightSequence constant(double c);
    static WeightSequence harmonic_plus();  ///< t_k = 1 + 1/k
    static WeightSequence from_table(std::vector<double> t, std::string label);
    static WeightSequence from_function(std::function<double(Index)> t, Index capacity,
                                        std::string label);

    double at(Index k) const;
    double operator()(Index k) const { return at(k); }

    /// Sum of t_k over lo <= k <= hi; zero when hi < lo.
    double range_sum(Index lo, Index hi) const;

    const std::string& label() const noexcept { return label_; }
    std::optional<Index> capacity() const noexcept { return capacity_; }
    WeightSequence relabeled(std::string label) const;

    /// Checks t_1 > 0 and that the tail [trend_window, n_max] stays above 1e-9.
    void validate(const HorizonPolicy& h) const;

    /// Minimum of t_k over k in [trend_window, n_max]; surrogate for liminf.
    double tail_infimum(const HorizonPolicy& h) const;

private:
    WeightSequence() = default;

    std::function<double(Index)> term_;
    std::function<double(Index, Index)> range_;
    std::optional<Index> capacity_;
    std::string label_;
};

struct SchemeValidation {
    bool non_decreasing = true;   ///< beta and gamma non-decreasing
    bool gamma_dominates = true;  ///< gamma_n >= beta_n
    bool gap_diverges = true;     ///< gamma_n - beta_n keeps growing past trend_window
    std::optional<Index> first_failure;

    bool ok() const noexcept { return non_decreasing && gamma_dominates && gap_diverges; }
};

SchemeValidation validate_scheme(const BetaGammaScheme& s, const HorizonPolicy& h);

/// T over the n-th window: sum of t_k for k in [beta_n, gamma_n].
double weighted_total(const BetaGammaScheme& s, const WeightSequence& w, Index n);

/// floor(lambda * y) on the integers, robust to representation error in lambda * y.
Index floor_scaled(double lambda, Index y);

struct Dilation {
    BetaGammaScheme scheme;
    std::vector<Index> collapsed;  ///< n where floor(lambda gamma_n) < beta_n
};

/// Replaces gamma by n -> floor(lambda gamma_n). Collapsed windows are listed
/// for n in [1, h.n_max].
Dilation dilate(const BetaGammaScheme& s, double lambda, const HorizonPolicy& h);

enum class RatioCondition { liminf_grow = 2, liminf_shrink = 3, limsup_grow = 4, limsup_shrink = 5 };

struct RatioEstimate {
    double estimate = 0.0;
    bool holds = false;
};

/// Tail-window estimate of ratio conditions (2)-(5) on weighted totals.
/// Conditions 2 and 4 need lambda > 1, conditions 3 and 5 need 0 < lambda < 1.
/// Throws DegenerateWindowError when a 4/5 denominator vanishes in the window.
RatioEstimate ratio_condition(const BetaGammaScheme& s, const WeightSequence& w, double lambda,
                              const HorizonPolicy& h, RatioCondition which);

inline constexpr double kHoldsMargin = 1e-9;

namespace schemes {

BetaGammaScheme classical();

/// beta = 1, gamma = floor(n^p); exact integer powers for integer p.
BetaGammaScheme power(double p);

/// beta = n - lambda_n + 1, gamma = n. lambda must be integer valued with
/// lambda_1 = 1, lambda_{n+1} <= lambda_n + 1, non-decreasing and unbounded;
/// each is checked on [1, check_horizon] and violations name the condition.
BetaGammaScheme lambda_based(std::function<Index(Index)> lambda, std::string label,
                             Index check_horizon = 4096);

/// beta_r = k_{r-1} + 1, gamma_r = k_r with k_0 = 0 and k strictly increasing.
BetaGammaScheme lacunary(std::function<Index(Index)> k, std::string label,
                         Index check_horizon = 62);

/// Rows (n, beta_n, gamma_n) with n running 1, 2, ... without gaps.
BetaGammaScheme from_table(const std::vector<std::array<Index, 3>>& rows, std::string label);

}  // namespace schemes

}  // namespace fuzzsum
