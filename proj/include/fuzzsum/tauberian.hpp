#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzsum/summability.hpp"

namespace fuzzsum {

/// Outcome of an exhaustive slow-decrease scan for one (eps, lambda, n0).
struct SlowDecreaseWitness {
    double eps = 0.0;
    double lambda = 0.0;
    Index n0 = 0;
    Index horizon = 0;
    /// (n, k) pairs where the order condition fails, ascending.
    std::vector<std::pair<Index, Index>> violations;

    bool holds() const noexcept { return violations.empty(); }
};

/// Scans n0 < n <= horizon, n < k <= min(floor(lambda n), horizon) and records
/// every pair where f_k(x) >= f_n(x) - eps fails. Needs lambda > 1, eps > 0, n0 < horizon.
SlowDecreaseWitness slowly_decreasing_check(const FuzzyFunctionSequence& seq, double x,
                                            double eps, double lambda, Index n0, Index horizon);

/// The shrinking form: scans n0 < n <= horizon, floor(lambda n) < k < n with
/// 0 < lambda < 1 and records pairs where f_n(x) >= f_k(x) - eps fails.
SlowDecreaseWitness slowly_decreasing_reverse_check(const FuzzyFunctionSequence& seq, double x,
                                                    double eps, double lambda, Index n0,
                                                    Index horizon);

/// Largest level-wise residual of one of the window rearrangement identities.
struct IdentityCheck {
    double x = 0.0;
    double lambda = 0.0;
    Index checked = 0;              ///< n values evaluated
    Index skipped_degenerate = 0;   ///< n where the dilated and plain totals coincide
    Index empty_dilated_window = 0; ///< n where floor(lambda gamma_n) < beta_n
    double max_residual = 0.0;
};

/**
 * lambda > 1: with T = T_n, U = T over [beta_n, floor(lambda gamma_n)], S and
 * S_U the matching theta = 1 means, checks
 *   U/(U-T) S_U + S = U/(U-T) S + 1/(U-T) sum_{gamma_n < k <= floor(lambda gamma_n)} t_k f_k(x).
 */
IdentityCheck check_growing_window_identity(const FuzzyFunctionSequence& seq,
                                            const BetaGammaScheme& s, const WeightSequence& w,
                                            double lambda, double x, const std::vector<Index>& ns);

/**
 * 0 < lambda < 1: with U = T over [beta_n, floor(lambda gamma_n)], checks
 *   U/(T-U) S_U + 1/(T-U) sum_{floor(lambda gamma_n) < k <= gamma_n} t_k f_k(x) = U/(T-U) S + S.
 * An empty dilated window makes U = 0 and the S_U term 0-bar.
 */
IdentityCheck check_shrinking_window_identity(const FuzzyFunctionSequence& seq,
                                              const BetaGammaScheme& s, const WeightSequence& w,
                                              double lambda, double x,
                                              const std::vector<Index>& ns);

/// d(f_{gamma_n}(x), f(x)).
double subsequence_distance(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                            const BetaGammaScheme& s, Index n, double x);

struct TauberianOptions {
    std::vector<double> eps_ladder{0.5, 0.2, 0.1, 0.05};
    std::vector<double> lambdas{1.25, 1.5, 2.0};  ///< reciprocals drive the shrinking identity
    std::vector<Index> n0_candidates{1, 10, 100};
    Index sd_horizon = 1024;        ///< slow-decrease scan length
    Index identity_horizon = 64;    ///< last n for the identity checks
    VerdictPolicy policy;
};

struct SlowDecreaseOutcome {
    double x = 0.0;
    double eps = 0.0;
    bool holds = false;
    /// The passing attempt, or the attempt with the fewest violations.
    SlowDecreaseWitness witness;
};

struct SubsequenceCell {
    double x = 0.0;
    std::vector<TracePoint> trace;
    Verdict verdict;
    Membership membership = Membership::inconclusive;
};

struct TauberianReport {
    std::string family;
    std::string scheme;
    std::string weights;
    Index horizon = 0;

    std::vector<std::pair<double, RatioEstimate>> condition2;
    bool condition2_holds = false;

    std::vector<SlowDecreaseOutcome> slowly_decreasing;
    bool slowly_decreasing_holds = false;

    ConvergenceReport summable;  ///< ord mode at theta = 1
    Membership summable_membership = Membership::inconclusive;

    std::vector<SubsequenceCell> conclusion;
    bool conclusion_holds = false;

    std::vector<IdentityCheck> identities;
    double identity_max_residual = 0.0;

    /// Every converged conclusion value is within the finest eps; vacuous
    /// when hypotheses fail.
    bool sandwich_holds = true;

    bool hypotheses_hold() const noexcept {
        return condition2_holds && slowly_decreasing_holds &&
               summable_membership == Membership::member;
    }
};

/// Checks each hypothesis, then measures the conclusion whatever the outcome,
/// so a failed hypothesis stays distinguishable from a failed conclusion.
/// The horizon is clamped with feasible_horizon; report.horizon holds the value used.
TauberianReport tauberian_experiment(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                                     const BetaGammaScheme& s, const WeightSequence& w,
                                     const XGridPolicy& grid, Index horizon,
                                     const TauberianOptions& options = {});

}  // namespace fuzzsum
