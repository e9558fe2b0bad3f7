#include "fuzzsum/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fuzzsum {

namespace {

double slack(double a, double b) {
    return kLevelTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string invariant_violation(std::span<const Interval> cuts) {
    if (cuts.size() < 2) {
        return "fuzzy number needs at least two levels";
    }
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const auto& c = cuts[i];
        if (!std::isfinite(c.lo) || !std::isfinite(c.hi)) {
            return "non-finite cut endpoint at level " + std::to_string(i);
        }
        if (c.lo > c.hi + slack(c.lo, c.hi)) {
            return "cut at level " + std::to_string(i) + " has lo > hi";
        }
        if (i > 0) {
            const auto& prev = cuts[i - 1];
            if (c.lo < prev.lo - slack(c.lo, prev.lo) || c.hi > prev.hi + slack(c.hi, prev.hi)) {
                return "cut at level " + std::to_string(i) + " is not nested in level " +
                       std::to_string(i - 1);
            }
        }
    }
    return {};
}

}  // namespace

void LevelGridPolicy::validate() const {
    if (level_count < 2) {
        throw std::invalid_argument("level grid needs at least 2 levels (got " +
                                    std::to_string(level_count) + ")");
    }
}

FuzzyNumber FuzzyNumber::from_cuts(std::vector<Interval> cuts) {
    if (auto why = invariant_violation(cuts); !why.empty()) {
        throw std::invalid_argument(why);
    }
    return FuzzyNumber(std::move(cuts));
}

double FuzzyNumber::alpha(std::size_t level) const noexcept {
    return static_cast<double>(level) / static_cast<double>(cuts_.size() - 1);
}

Interval FuzzyNumber::cut_at(double a) const {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    const double pos = a * static_cast<double>(cuts_.size() - 1);
    const auto below = static_cast<std::size_t>(std::floor(pos));
    if (below + 1 >= cuts_.size()) {
        return cuts_.back();
    }
    const double w = pos - static_cast<double>(below);
    if (w == 0.0) {
        return cuts_[below];
    }
    const auto& p = cuts_[below];
    const auto& q = cuts_[below + 1];
    return {p.lo + w * (q.lo - p.lo), p.hi + w * (q.hi - p.hi)};
}

FuzzyNumber FuzzyNumber::resampled(std::size_t count) const {
    LevelGridPolicy{count}.validate();
    if (count == cuts_.size()) {
        return *this;
    }
    std::vector<Interval> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = cut_at(static_cast<double>(i) / static_cast<double>(count - 1));
    }
    return FuzzyNumber(std::move(out));
}

bool FuzzyNumber::satisfies_invariants() const noexcept {
    return invariant_violation(cuts_).empty();
}

FuzzyNumber crisp(double r, LevelGridPolicy policy) {
    policy.validate();
    if (!std::isfinite(r)) {
        throw std::invalid_argument("crisp value must be finite");
    }
    return FuzzyNumber(std::vector<Interval>(policy.level_count, Interval{r, r}));
}

FuzzyNumber triangular(double center, double left_spread, double right_spread,
                       LevelGridPolicy policy) {
    policy.validate();
    if (!(left_spread >= 0.0) || !(right_spread >= 0.0)) {
        throw std::invalid_argument("triangular spreads must be non-negative");
    }
    if (!std::isfinite(center) || !std::isfinite(left_spread) || !std::isfinite(right_spread)) {
        throw std::invalid_argument("triangular parameters must be finite");
    }
    const std::size_t n = policy.level_count;
    std::vector<Interval> cuts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rest = static_cast<double>(n - 1 - i) / static_cast<double>(n - 1);
        cuts[i] = {center - rest * left_spread, center + rest * right_spread};
    }
    return FuzzyNumber(std::move(cuts));
}

FuzzyNumber add(const FuzzyNumber& x, const FuzzyNumber& y) {
    if (x.level_count() != y.level_count()) {
        const auto n = std::max(x.level_count(), y.level_count());
        return add(x.resampled(n), y.resampled(n));
    }
    std::vector<Interval> out(x.level_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = {x.cuts_[i].lo + y.cuts_[i].lo, x.cuts_[i].hi + y.cuts_[i].hi};
    }
    return FuzzyNumber(std::move(out));
}

FuzzyNumber scale(double c, const FuzzyNumber& x) {
    if (!std::isfinite(c)) {
        throw std::invalid_argument("scale factor must be finite");
    }
    std::vector<Interval> out(x.level_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double a = c * x.cuts_[i].lo;
        const double b = c * x.cuts_[i].hi;
        out[i] = c < 0.0 ? Interval{b, a} : Interval{a, b};
    }
    return FuzzyNumber(std::move(out));
}

FuzzyNumber translate(const FuzzyNumber& x, double shift) {
    return add(x, crisp(shift, {x.level_count()}));
}

double distance(const FuzzyNumber& x, const FuzzyNumber& y) {
    if (x.level_count() != y.level_count()) {
        const auto n = std::max(x.level_count(), y.level_count());
        return distance(x.resampled(n), y.resampled(n));
    }
    double d = 0.0;
    const auto xc = x.cuts();
    const auto yc = y.cuts();
    for (std::size_t i = 0; i < xc.size(); ++i) {
        d = std::max({d, std::abs(xc[i].lo - yc[i].lo), std::abs(xc[i].hi - yc[i].hi)});
    }
    return d;
}

bool partial_leq(const FuzzyNumber& x, const FuzzyNumber& y) {
    if (x.level_count() != y.level_count()) {
        const auto n = std::max(x.level_count(), y.level_count());
        return partial_leq(x.resampled(n), y.resampled(n));
    }
    const auto xc = x.cuts();
    const auto yc = y.cuts();
    for (std::size_t i = 0; i < xc.size(); ++i) {
        if (xc[i].lo > yc[i].lo + kLevelTolerance || xc[i].hi > yc[i].hi + kLevelTolerance) {
            return false;
        }
    }
    return true;
}

bool approx_equal(const FuzzyNumber& x, const FuzzyNumber& y, double tol) {
    return distance(x, y) <= tol;
}

Lemma1Result lemma1_check(const FuzzyNumber& x, const FuzzyNumber& y, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("lemma1_check needs a finite eps > 0");
    }
    Lemma1Result r;
    r.metric_side = distance(x, y) <= eps + kLevelTolerance;
    r.order_side = partial_leq(translate(x, -eps), y) && partial_leq(y, translate(x, eps));
    return r;
}

}  // namespace fuzzsum
