#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzsum/fuzzy_number.hpp"
#include "fuzzsum/fuzzy_sequences.hpp"
#include "fuzzsum/schemes.hpp"

namespace fuzzsum {

using LimitFn = FuzzyFunctionSequence::LimitFn;

/// Order theta, statistical threshold eps, and the (beta, gamma, t) data.
struct ModeParams {
    double theta = 1.0;
    double eps = 0.1;
    BetaGammaScheme scheme = schemes::classical();
    WeightSequence weights = WeightSequence::constant(1.0);

    /// Throws std::invalid_argument unless 0 < theta <= 1 and eps > 0.
    void validate() const;
};

// ---------------------------------------------------------------------------
// Window primitives. Families with a SparseShape only visit exceptional k.

/// Sum of t_k d(f_k(x), f(x)) for k in [lo, hi].
double weighted_deviation_sum(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                              const WeightSequence& w, Index lo, Index hi, double x);

/// Level-wise sum of t_k f_k(x) for k in [lo, hi]; 0-bar for an empty range.
FuzzyNumber weighted_fuzzy_sum(const FuzzyFunctionSequence& seq, const WeightSequence& w,
                               Index lo, Index hi, double x);

/// Number of k in [1, upto] with t_k d(f_k(x), f(x)) >= eps.
Index exceedance_count(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                       const WeightSequence& w, Index upto, double eps, double x);

/// floor(T) with a 1e-12 relative guard against totals like 19.999999999999996.
Index floor_total(double total);

// ---------------------------------------------------------------------------
// Transforms at a single (n, x)

/// s_n(x): weighted mean deviation over the n-th window, normalised by T^theta.
double absolute_partial(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                        const ModeParams& p, Index n, double x);

/// S_n(x): the fuzzy weighted mean (1 / T^theta) sum t_k f_k(x).
FuzzyNumber ordinary_partial(const FuzzyFunctionSequence& seq, const ModeParams& p, Index n,
                             double x);

/// |{k <= floor(T): t_k d(f_k(x), f(x)) >= eps}|.
Index sp_count(const FuzzyFunctionSequence& seq, const LimitFn& limit, const ModeParams& p,
               Index n, double x);

/// sp_count / T^theta.
double sp_density(const FuzzyFunctionSequence& seq, const LimitFn& limit, const ModeParams& p,
                  Index n, double x);

// ---------------------------------------------------------------------------
// Verdicts

struct TracePoint {
    Index n = 0;
    double value = 0.0;
};

enum class VerdictKind { converges, diverges, inconclusive };

struct Verdict {
    VerdictKind kind = VerdictKind::inconclusive;
    double limit_estimate = 0.0;  ///< mean of the tail when kind == converges
};

struct VerdictPolicy {
    double tol = 0.05;
    std::size_t window = 3;
    double divergence_factor = 10.0;
};

/**
 * Finite-horizon verdict on a trace.
 *
 * converges(v): the last `window` values all lie within tol of their mean v.
 * diverges: the last `window` values are non-decreasing and the final one
 * exceeds divergence_factor * (first trace value + 1).
 * Anything else is inconclusive.
 */
Verdict verdict(std::span<const TracePoint> trace, const VerdictPolicy& policy);

enum class Membership { member, non_member, inconclusive };

/**
 * Maps a verdict on a deviation trace (which should tend to 0) to class
 * membership. A trace that settles on a nonzero value counts against
 * membership only once it has stopped decreasing.
 */
Membership membership_of(const Verdict& v, std::span<const TracePoint> trace,
                         const VerdictPolicy& policy);

// ---------------------------------------------------------------------------
// Classification

enum class Mode { sp, abs, ord };

std::string_view mode_name(Mode m);
Mode parse_mode(std::string_view name);
std::string_view verdict_name(VerdictKind k);
std::string_view membership_name(Membership m);

/// 1, 2, 4, ... up to horizon, with horizon appended when it is not a power of two.
std::vector<Index> ladder(Index horizon);

/**
 * Largest n <= horizon that the scheme defines and whose window stays
 * tractable: gamma_n <= 2^40 for sparse families, 2^22 otherwise.
 */
Index feasible_horizon(const FuzzyFunctionSequence& seq, const BetaGammaScheme& s, Index horizon);

/// Trace of the mode's deviation quantity along the ladder:
/// sp -> sp_density, abs -> absolute_partial, ord -> d(S_n(x), f(x)).
std::vector<TracePoint> mode_trace(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                                   const ModeParams& p, Mode mode, double x, Index horizon);

struct ClassifyParams {
    ModeParams mode;
    XGridPolicy grid = XGridPolicy::uniform(1.0, 2.0, 5);
    Index horizon = 4096;
    std::vector<Mode> modes{Mode::sp, Mode::abs, Mode::ord};
    VerdictPolicy policy;
};

struct CellResult {
    double x = 0.0;
    Mode mode = Mode::abs;
    double theta = 1.0;
    Verdict verdict;
    Membership membership = Membership::inconclusive;
    std::vector<TracePoint> trace;
    std::optional<FuzzyNumber> final_mean;  ///< S_n(x) at the last ladder step (ord only)
};

struct ConvergenceReport {
    std::string family;
    std::string scheme;
    std::string weights;
    double theta = 1.0;
    double eps = 0.1;
    std::vector<double> grid;
    Index horizon = 0;
    VerdictPolicy policy;
    std::vector<CellResult> cells;  ///< ordered by x, then mode

    /// member iff every grid x is a member; non_member if any x is not;
    /// inconclusive otherwise. Throws if the mode was not classified.
    Membership membership(Mode m) const;
};

/// Per-x, per-mode verdicts. Cells run concurrently and are assembled in
/// (x, mode) order.
ConvergenceReport classify(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                           const ClassifyParams& params);

}  // namespace fuzzsum
