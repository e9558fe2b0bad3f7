#include "fuzzsum/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fuzzsum {

namespace {

std::vector<FuzzyNumber> tabulate(const FuzzyFunctionSequence& seq, double x, Index upto) {
    std::vector<FuzzyNumber> values;
    values.reserve(upto);
    for (Index k = 1; k <= upto; ++k) {
        values.push_back(seq.eval(k, x));
    }
    return values;
}

void require_scan_args(double eps, Index n0, Index horizon) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("slow-decrease scan needs eps > 0");
    }
    if (n0 >= horizon) {
        throw std::invalid_argument("slow-decrease scan needs n0 < horizon");
    }
}

double magnitude(const FuzzyNumber& v) {
    double m = 1.0;
    for (const auto& c : v.cuts()) {
        m = std::max({m, std::abs(c.lo), std::abs(c.hi)});
    }
    return m;
}

double relative_residual(const FuzzyNumber& lhs, const FuzzyNumber& rhs) {
    return distance(lhs, rhs) / std::max(magnitude(lhs), magnitude(rhs));
}

}  // namespace

SlowDecreaseWitness slowly_decreasing_check(const FuzzyFunctionSequence& seq, double x,
                                            double eps, double lambda, Index n0, Index horizon) {
    require_scan_args(eps, n0, horizon);
    if (!(lambda > 1.0)) {
        throw std::invalid_argument("slowly_decreasing_check needs lambda > 1");
    }
    SlowDecreaseWitness w{eps, lambda, n0, horizon, {}};
    const auto u = tabulate(seq, x, horizon);
    for (Index n = n0 + 1; n <= horizon; ++n) {
        const auto lowered = translate(u[n - 1], -eps);
        const Index k_end = std::min(floor_scaled(lambda, n), horizon);
        for (Index k = n + 1; k <= k_end; ++k) {
            if (!partial_leq(lowered, u[k - 1])) {
                w.violations.emplace_back(n, k);
            }
        }
    }
    return w;
}

SlowDecreaseWitness slowly_decreasing_reverse_check(const FuzzyFunctionSequence& seq, double x,
                                                    double eps, double lambda, Index n0,
                                                    Index horizon) {
    require_scan_args(eps, n0, horizon);
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("slowly_decreasing_reverse_check needs 0 < lambda < 1");
    }
    SlowDecreaseWitness w{eps, lambda, n0, horizon, {}};
    const auto u = tabulate(seq, x, horizon);
    for (Index n = n0 + 1; n <= horizon; ++n) {
        for (Index k = floor_scaled(lambda, n) + 1; k < n; ++k) {
            if (!partial_leq(translate(u[k - 1], -eps), u[n - 1])) {
                w.violations.emplace_back(n, k);
            }
        }
    }
    return w;
}

IdentityCheck check_growing_window_identity(const FuzzyFunctionSequence& seq,
                                            const BetaGammaScheme& s, const WeightSequence& w,
                                            double lambda, double x, const std::vector<Index>& ns) {
    if (!(lambda > 1.0)) {
        throw std::invalid_argument("growing-window identity needs lambda > 1");
    }
    IdentityCheck check{x, lambda, 0, 0, 0, 0.0};
    for (Index n : ns) {
        const Index b = s.beta(n);
        const Index g = s.gamma(n);
        const Index gd = floor_scaled(lambda, g);
        const double total = w.range_sum(b, g);
        const double dilated_total = w.range_sum(b, gd);
        if (!(dilated_total > total)) {
            ++check.skipped_degenerate;
            continue;
        }
        const double gap = dilated_total - total;
        const double c = dilated_total / gap;
        const auto mean = scale(1.0 / total, weighted_fuzzy_sum(seq, w, b, g, x));
        const auto dilated_mean = scale(1.0 / dilated_total, weighted_fuzzy_sum(seq, w, b, gd, x));
        const auto tail = weighted_fuzzy_sum(seq, w, g + 1, gd, x);

        const auto lhs = add(scale(c, dilated_mean), mean);
        const auto rhs = add(scale(c, mean), scale(1.0 / gap, tail));
        check.max_residual = std::max(check.max_residual, relative_residual(lhs, rhs));
        ++check.checked;
    }
    return check;
}

IdentityCheck check_shrinking_window_identity(const FuzzyFunctionSequence& seq,
                                              const BetaGammaScheme& s, const WeightSequence& w,
                                              double lambda, double x,
                                              const std::vector<Index>& ns) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("shrinking-window identity needs 0 < lambda < 1");
    }
    IdentityCheck check{x, lambda, 0, 0, 0, 0.0};
    for (Index n : ns) {
        const Index b = s.beta(n);
        const Index g = s.gamma(n);
        const Index gd = floor_scaled(lambda, g);
        const bool empty = gd < b;
        const double total = w.range_sum(b, g);
        const double dilated_total = empty ? 0.0 : w.range_sum(b, gd);
        if (!(total > dilated_total)) {
            ++check.skipped_degenerate;
            continue;
        }
        if (empty) {
            ++check.empty_dilated_window;
        }
        const double gap = total - dilated_total;
        const double c = dilated_total / gap;
        const auto mean = scale(1.0 / total, weighted_fuzzy_sum(seq, w, b, g, x));
        const auto dilated_term =
            empty ? crisp(0.0, {mean.level_count()})
                  : scale(c, scale(1.0 / dilated_total, weighted_fuzzy_sum(seq, w, b, gd, x)));
        const auto tail = weighted_fuzzy_sum(seq, w, std::max(gd + 1, b), g, x);

        const auto lhs = add(dilated_term, scale(1.0 / gap, tail));
        const auto rhs = add(scale(c, mean), mean);
        check.max_residual = std::max(check.max_residual, relative_residual(lhs, rhs));
        ++check.checked;
    }
    return check;
}

double subsequence_distance(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                            const BetaGammaScheme& s, Index n, double x) {
    return distance(seq.eval(s.gamma(n), x), limit(x));
}

TauberianReport tauberian_experiment(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                                     const BetaGammaScheme& s, const WeightSequence& w,
                                     const XGridPolicy& grid, Index horizon,
                                     const TauberianOptions& options) {
    grid.validate(seq.domain());
    if (options.eps_ladder.empty() || options.lambdas.empty() || options.n0_candidates.empty()) {
        throw std::invalid_argument("tauberian experiment needs eps, lambda and n0 candidates");
    }
    TauberianReport report;
    report.family = seq.label();
    report.scheme = s.label();
    report.weights = w.label();
    horizon = feasible_horizon(seq, s, horizon);
    if (horizon == 0) {
        throw std::invalid_argument("scheme " + s.label() + " has no tractable window for " +
                                    seq.label());
    }
    report.horizon = horizon;

    // Condition (2) on the scheme and weights.
    report.condition2_holds = true;
    const auto ratio_horizon = HorizonPolicy::up_to(horizon);
    for (double lambda : options.lambdas) {
        const auto est = ratio_condition(s, w, lambda, ratio_horizon, RatioCondition::liminf_grow);
        report.condition2.emplace_back(lambda, est);
        report.condition2_holds = report.condition2_holds && est.holds;
    }

    // Slow decrease: each eps needs some (lambda, n0) with a clean scan.
    report.slowly_decreasing_holds = true;
    for (double x : grid.points) {
        for (double eps : options.eps_ladder) {
            SlowDecreaseOutcome outcome;
            outcome.x = x;
            outcome.eps = eps;
            std::optional<SlowDecreaseWitness> best;
            for (Index n0 : options.n0_candidates) {
                if (n0 >= options.sd_horizon) {
                    continue;
                }
                for (double lambda : options.lambdas) {
                    auto scan = slowly_decreasing_check(seq, x, eps, lambda, n0, options.sd_horizon);
                    if (!best || scan.violations.size() < best->violations.size()) {
                        best = std::move(scan);
                    }
                    if (best->holds()) {
                        break;
                    }
                }
                if (best && best->holds()) {
                    break;
                }
            }
            if (!best) {
                throw std::invalid_argument("every n0 candidate is past the slow-decrease horizon");
            }
            outcome.holds = best->holds();
            outcome.witness = std::move(*best);
            report.slowly_decreasing_holds = report.slowly_decreasing_holds && outcome.holds;
            report.slowly_decreasing.push_back(std::move(outcome));
        }
    }

    // Ordinary summability at theta = 1.
    ClassifyParams cp;
    cp.mode = ModeParams{1.0, options.eps_ladder.back(), s, w};
    cp.grid = grid;
    cp.horizon = horizon;
    cp.modes = {Mode::ord};
    cp.policy = options.policy;
    report.summable = classify(seq, limit, cp);
    report.summable_membership = report.summable.membership(Mode::ord);

    // Conclusion: d(f_{gamma_n}(x), f(x)) along the ladder.
    report.conclusion_holds = true;
    const double finest_eps = *std::min_element(options.eps_ladder.begin(), options.eps_ladder.end());
    for (double x : grid.points) {
        SubsequenceCell cell;
        cell.x = x;
        for (Index n : ladder(horizon)) {
            cell.trace.push_back({n, subsequence_distance(seq, limit, s, n, x)});
        }
        VerdictPolicy policy = options.policy;
        policy.window = std::min(policy.window, cell.trace.size());
        cell.verdict = verdict(cell.trace, policy);
        cell.membership = membership_of(cell.verdict, cell.trace, policy);
        report.conclusion_holds = report.conclusion_holds && cell.membership == Membership::member;
        if (report.hypotheses_hold() && cell.verdict.kind == VerdictKind::converges) {
            report.sandwich_holds =
                report.sandwich_holds && std::abs(cell.verdict.limit_estimate) <= finest_eps;
        }
        report.conclusion.push_back(std::move(cell));
    }

    // Window rearrangement identities for both branches.
    // Identity windows are summed level-wise, so keep floor(lambda gamma_n) small.
    const double lambda_max = *std::max_element(options.lambdas.begin(), options.lambdas.end());
    std::vector<Index> ns;
    for (Index n = 1; n <= std::min(options.identity_horizon, horizon); ++n) {
        if (static_cast<double>(s.gamma(n)) * lambda_max > static_cast<double>(Index{1} << 20)) {
            break;
        }
        ns.push_back(n);
    }
    for (double x : grid.points) {
        for (double lambda : options.lambdas) {
            auto grow = check_growing_window_identity(seq, s, w, lambda, x, ns);
            auto shrink = check_shrinking_window_identity(seq, s, w, 1.0 / lambda, x, ns);
            report.identity_max_residual =
                std::max({report.identity_max_residual, grow.max_residual, shrink.max_residual});
            report.identities.push_back(grow);
            report.identities.push_back(shrink);
        }
    }
    return report;
}

}  // namespace fuzzsum
