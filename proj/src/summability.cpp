#include "fuzzsum/summability.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

namespace fuzzsum {

namespace {

// The sparse shortcut is valid when the base value sits exactly on the limit,
// so every non-exceptional index contributes zero deviation.
bool base_matches_limit(const FuzzyFunctionSequence& seq, const LimitFn& limit, double x) {
    return seq.sparse() && distance(seq.sparse()->base(x), limit(x)) == 0.0;
}

double normaliser(double total, double theta) {
    if (!(total > 0.0)) {
        throw std::logic_error("weighted total vanished; weights must be positive");
    }
    return std::pow(total, theta);
}

}  // namespace

void ModeParams::validate() const {
    if (!(theta > 0.0 && theta <= 1.0)) {
        throw std::invalid_argument("theta must lie in (0, 1]");
    }
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("eps must be positive and finite");
    }
}

double weighted_deviation_sum(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                              const WeightSequence& w, Index lo, Index hi, double x) {
    if (hi < lo) {
        return 0.0;
    }
    const FuzzyNumber target = limit(x);
    long double sum = 0.0L;
    auto add_term = [&](Index k) { sum += w.at(k) * distance(seq.eval(k, x), target); };
    if (base_matches_limit(seq, limit, x)) {
        seq.sparse()->exceptions(lo, hi, add_term);
    } else {
        for (Index k = lo; k <= hi; ++k) {
            add_term(k);
        }
    }
    return static_cast<double>(sum);
}

FuzzyNumber weighted_fuzzy_sum(const FuzzyFunctionSequence& seq, const WeightSequence& w,
                               Index lo, Index hi, double x) {
    if (hi < lo) {
        return crisp(0.0);
    }
    if (seq.sparse()) {
        const auto& shape = *seq.sparse();
        std::optional<FuzzyNumber> special;
        long double special_weight = 0.0L;
        shape.exceptions(lo, hi, [&](Index k) {
            const double t = w.at(k);
            special_weight += t;
            auto term = scale(t, seq.eval(k, x));
            special = special ? add(*special, term) : std::move(term);
        });
        const double base_weight = std::max(
            0.0, static_cast<double>(static_cast<long double>(w.range_sum(lo, hi)) - special_weight));
        auto total = scale(base_weight, shape.base(x));
        return special ? add(total, *special) : total;
    }
    FuzzyNumber acc = scale(w.at(lo), seq.eval(lo, x));
    for (Index k = lo + 1; k <= hi; ++k) {
        acc = add(acc, scale(w.at(k), seq.eval(k, x)));
    }
    return acc;
}

Index exceedance_count(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                       const WeightSequence& w, Index upto, double eps, double x) {
    if (upto == 0) {
        return 0;
    }
    const FuzzyNumber target = limit(x);
    Index count = 0;
    auto test = [&](Index k) {
        if (w.at(k) * distance(seq.eval(k, x), target) >= eps) {
            ++count;
        }
    };
    if (base_matches_limit(seq, limit, x)) {
        seq.sparse()->exceptions(1, upto, test);
    } else {
        for (Index k = 1; k <= upto; ++k) {
            test(k);
        }
    }
    return count;
}

Index floor_total(double total) {
    if (!(total >= 0.0) || !std::isfinite(total)) {
        throw std::invalid_argument("weighted total must be finite and non-negative");
    }
    const double guarded = total + 1e-12 * std::max(1.0, total);
    return static_cast<Index>(std::floor(guarded));
}

double absolute_partial(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                        const ModeParams& p, Index n, double x) {
    p.validate();
    const double total = weighted_total(p.scheme, p.weights, n);
    const double sum = weighted_deviation_sum(seq, limit, p.weights, p.scheme.beta(n),
                                              p.scheme.gamma(n), x);
    return sum / normaliser(total, p.theta);
}

FuzzyNumber ordinary_partial(const FuzzyFunctionSequence& seq, const ModeParams& p, Index n,
                             double x) {
    p.validate();
    const double total = weighted_total(p.scheme, p.weights, n);
    const auto sum = weighted_fuzzy_sum(seq, p.weights, p.scheme.beta(n), p.scheme.gamma(n), x);
    return scale(1.0 / normaliser(total, p.theta), sum);
}

Index sp_count(const FuzzyFunctionSequence& seq, const LimitFn& limit, const ModeParams& p,
               Index n, double x) {
    p.validate();
    const double total = weighted_total(p.scheme, p.weights, n);
    return exceedance_count(seq, limit, p.weights, floor_total(total), p.eps, x);
}

double sp_density(const FuzzyFunctionSequence& seq, const LimitFn& limit, const ModeParams& p,
                  Index n, double x) {
    const double total = weighted_total(p.scheme, p.weights, n);
    return static_cast<double>(sp_count(seq, limit, p, n, x)) / normaliser(total, p.theta);
}

// ---------------------------------------------------------------------------

Verdict verdict(std::span<const TracePoint> trace, const VerdictPolicy& policy) {
    if (trace.empty()) {
        throw std::invalid_argument("verdict needs a nonempty trace");
    }
    if (policy.window == 0 || policy.window > trace.size()) {
        throw std::invalid_argument("verdict window must lie in [1, trace length]");
    }
    const auto tail = trace.subspan(trace.size() - policy.window);
    long double acc = 0.0L;
    for (const auto& pt : tail) {
        acc += pt.value;
    }
    const double mean = static_cast<double>(acc / static_cast<long double>(tail.size()));
    const bool settled = std::all_of(tail.begin(), tail.end(), [&](const TracePoint& pt) {
        return std::abs(pt.value - mean) <= policy.tol;
    });
    if (settled) {
        return {VerdictKind::converges, mean};
    }
    bool rising = true;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        rising = rising && tail[i].value >= tail[i - 1].value;
    }
    const double last = tail.back().value;
    if (rising && last > tail.front().value &&
        last > policy.divergence_factor * (trace.front().value + 1.0)) {
        return {VerdictKind::diverges, last};
    }
    return {VerdictKind::inconclusive, last};
}

Membership membership_of(const Verdict& v, std::span<const TracePoint> trace,
                         const VerdictPolicy& policy) {
    switch (v.kind) {
        case VerdictKind::diverges:
            return Membership::non_member;
        case VerdictKind::inconclusive:
            return Membership::inconclusive;
        case VerdictKind::converges:
            break;
    }
    if (std::abs(v.limit_estimate) <= policy.tol) {
        return Membership::member;
    }
    const auto tail = trace.subspan(trace.size() - std::min(policy.window, trace.size()));
    bool falling = tail.size() > 1;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        falling = falling && tail[i].value < tail[i - 1].value;
    }
    return falling ? Membership::inconclusive : Membership::non_member;
}

std::string_view mode_name(Mode m) {
    switch (m) {
        case Mode::sp:
            return "sp";
        case Mode::abs:
            return "abs";
        case Mode::ord:
            return "ord";
    }
    return "?";
}

Mode parse_mode(std::string_view name) {
    if (name == "sp") return Mode::sp;
    if (name == "abs") return Mode::abs;
    if (name == "ord") return Mode::ord;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::string_view verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::converges:
            return "converges";
        case VerdictKind::diverges:
            return "diverges";
        case VerdictKind::inconclusive:
            return "inconclusive";
    }
    return "?";
}

std::string_view membership_name(Membership m) {
    switch (m) {
        case Membership::member:
            return "member";
        case Membership::non_member:
            return "non_member";
        case Membership::inconclusive:
            return "inconclusive";
    }
    return "?";
}

std::vector<Index> ladder(Index horizon) {
    if (horizon == 0) {
        throw std::invalid_argument("ladder needs horizon >= 1");
    }
    std::vector<Index> out;
    for (Index n = 1; n <= horizon; n *= 2) {
        out.push_back(n);
        if (n > horizon / 2) {
            break;
        }
    }
    if (out.back() != horizon) {
        out.push_back(horizon);
    }
    return out;
}

Index feasible_horizon(const FuzzyFunctionSequence& seq, const BetaGammaScheme& s, Index horizon) {
    const Index budget = seq.sparse() ? Index{1} << 40 : Index{1} << 22;
    if (s.last_n()) {
        horizon = std::min(horizon, *s.last_n());
    }
    // gamma is non-decreasing, so bisect on gamma_n <= budget.
    if (horizon == 0 || s.gamma(horizon) <= budget) {
        return horizon;
    }
    Index lo = 0;
    Index hi = horizon;
    while (hi - lo > 1) {
        const Index mid = lo + (hi - lo) / 2;
        (s.gamma(mid) <= budget ? lo : hi) = mid;
    }
    return lo;
}

std::vector<TracePoint> mode_trace(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                                   const ModeParams& p, Mode mode, double x, Index horizon) {
    std::vector<TracePoint> trace;
    for (Index n : ladder(horizon)) {
        double value = 0.0;
        switch (mode) {
            case Mode::sp:
                value = sp_density(seq, limit, p, n, x);
                break;
            case Mode::abs:
                value = absolute_partial(seq, limit, p, n, x);
                break;
            case Mode::ord:
                value = distance(ordinary_partial(seq, p, n, x), limit(x));
                break;
        }
        trace.push_back({n, value});
    }
    return trace;
}

Membership ConvergenceReport::membership(Mode m) const {
    bool seen = false;
    bool all_member = true;
    for (const auto& c : cells) {
        if (c.mode != m) {
            continue;
        }
        seen = true;
        if (c.membership == Membership::non_member) {
            return Membership::non_member;
        }
        all_member = all_member && c.membership == Membership::member;
    }
    if (!seen) {
        throw std::invalid_argument("mode " + std::string(mode_name(m)) + " was not classified");
    }
    return all_member ? Membership::member : Membership::inconclusive;
}

ConvergenceReport classify(const FuzzyFunctionSequence& seq, const LimitFn& limit,
                           const ClassifyParams& params) {
    params.mode.validate();
    params.grid.validate(seq.domain());
    if (params.modes.empty()) {
        throw std::invalid_argument("classify needs at least one mode");
    }

    ConvergenceReport report;
    report.family = seq.label();
    report.scheme = params.mode.scheme.label();
    report.weights = params.mode.weights.label();
    report.theta = params.mode.theta;
    report.eps = params.mode.eps;
    report.grid = params.grid.points;
    report.horizon = params.horizon;
    report.policy = params.policy;

    auto run_cell = [&](double x, Mode mode) {
        CellResult cell;
        cell.x = x;
        cell.mode = mode;
        cell.theta = params.mode.theta;
        cell.trace = mode_trace(seq, limit, params.mode, mode, x, params.horizon);
        const std::size_t window = std::min(params.policy.window, cell.trace.size());
        VerdictPolicy policy = params.policy;
        policy.window = window;
        cell.verdict = verdict(cell.trace, policy);
        cell.membership = membership_of(cell.verdict, cell.trace, policy);
        if (mode == Mode::ord) {
            cell.final_mean = ordinary_partial(seq, params.mode, cell.trace.back().n, x);
        }
        return cell;
    };

    std::vector<std::future<CellResult>> pending;
    for (double x : params.grid.points) {
        for (Mode mode : params.modes) {
            pending.push_back(std::async(std::launch::async, run_cell, x, mode));
        }
    }
    for (auto& f : pending) {
        report.cells.push_back(f.get());
    }
    return report;
}

}  // namespace fuzzsum
