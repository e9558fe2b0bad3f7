#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fuzzsum/fuzzy_number.hpp"
#include "fuzzsum/schemes.hpp"

namespace fuzzsum {

/// Closed interval [a, b] on which the fuzzy functions live.
struct Domain {
    double a = 1.0;
    double b = 2.0;

    bool contains(double x) const noexcept { return x >= a && x <= b; }
};

/// Sample points for pointwise statements.
struct XGridPolicy {
    std::vector<double> points;

    /// `count` evenly spaced points from a to b inclusive (count == 1 gives {a}).
    static XGridPolicy uniform(double a, double b, std::size_t count);

    /// Nonempty, strictly increasing, inside the domain; throws otherwise.
    void validate(const Domain& d) const;
};

/**
 * Optional shape hint for families that equal a base value except on a thin
 * index set (squares, cubes, a finite table). Window sums and exceedance
 * counts then only visit the exceptional indices.
 */
struct SparseShape {
    std::function<FuzzyNumber(double x)> base;
    /// Calls `visit(k)` for every exceptional k in [lo, hi], ascending.
    std::function<void(Index lo, Index hi, const std::function<void(Index)>& visit)> exceptions;
};

/// k -> f_k(x), a sequence of fuzzy functions on [a, b].
class FuzzyFunctionSequence {
public:
    using Evaluator = std::function<FuzzyNumber(Index k, double x)>;
    using LimitFn = std::function<FuzzyNumber(double x)>;

    FuzzyFunctionSequence(std::string label, Domain domain, Evaluator eval,
                          std::optional<LimitFn> claimed_limit = std::nullopt,
                          std::optional<SparseShape> sparse = std::nullopt);

    /// f_k(x). Throws std::invalid_argument for k == 0 or x outside the domain.
    FuzzyNumber eval(Index k, double x) const;

    bool has_limit() const noexcept { return limit_.has_value(); }
    /// Claimed limit f(x); throws std::logic_error if the family has none.
    FuzzyNumber limit(double x) const;
    const LimitFn& limit_fn() const;

    const std::optional<SparseShape>& sparse() const noexcept { return sparse_; }
    const std::string& label() const noexcept { return label_; }
    const Domain& domain() const noexcept { return domain_; }

private:
    std::string label_;
    Domain domain_;
    Evaluator eval_;
    std::optional<LimitFn> limit_;
    std::optional<SparseShape> sparse_;
};

// Exact integer roots.
Index isqrt(Index n);
Index icbrt(Index n);
bool is_square(Index n);
bool is_cube(Index n);

/// Family selector for builtin_family.
struct FamilySpec {
    std::string kind;   ///< square_indicator, triangular_growing, cube_triangular_decaying,
                        ///< alternating_crisp, remark3_double, reciprocal_crisp
    double bound = 1.0; ///< M for square_indicator / remark3_double
    Index n = 1;        ///< cut-off for remark3_double
};

FuzzyFunctionSequence builtin_family(const FamilySpec& spec, Domain domain = {});

namespace families {

/// 0-bar on square k, crisp(M) elsewhere; limit crisp(M).
FuzzyFunctionSequence square_indicator(double bound = 1.0, Domain domain = {});
/// triangular(0, xk, xk) on square k, 0-bar elsewhere; limit 0-bar.
FuzzyFunctionSequence triangular_growing(Domain domain = {});
/// triangular(0, x/k, x/k) on cube k, 0-bar elsewhere; limit 0-bar.
FuzzyFunctionSequence cube_triangular_decaying(Domain domain = {});
/// crisp((-1)^(k+1)); limit 0-bar.
FuzzyFunctionSequence alternating_crisp(Domain domain = {});
/// 0-bar on square k <= n, crisp(M) elsewhere; limit crisp(M).
FuzzyFunctionSequence remark3_double(Index n, double bound = 1.0, Domain domain = {});
/// crisp(1/k); limit 0-bar.
FuzzyFunctionSequence reciprocal_crisp(Domain domain = {});
/// f_k = value for every k; limit value.
FuzzyFunctionSequence constant(const FuzzyNumber& value, Domain domain = {});
/// triangular(center, spread, spread) at each listed k, 0-bar elsewhere; limit 0-bar.
/// Rows are (k, center, spread) and must list distinct k.
FuzzyFunctionSequence from_table(const std::vector<std::array<double, 3>>& rows,
                                 std::string label, Domain domain = {});

}  // namespace families

struct BoundednessReport {
    bool bounded = false;
    double bound = 0.0;            ///< max of d(f_k(x), 0-bar) over grid x [1, k_max]
    std::optional<Index> witness;  ///< k where the running max last grew, when unbounded
};

/// Bounded when the running max of d(f_k(x), 0-bar) stops growing over the
/// second half of [1, k_max].
BoundednessReport is_bounded(const FuzzyFunctionSequence& seq, const XGridPolicy& grid,
                             Index k_max);

}  // namespace fuzzsum
