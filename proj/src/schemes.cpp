#include "fuzzsum/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fuzzsum {

namespace {

// Harmonic numbers: exact summation below the cutoff, asymptotic series above.
constexpr Index kHarmonicTableSize = 1024;

const std::vector<double>& harmonic_table() {
    static const std::vector<double> table = [] {
        std::vector<double> h(kHarmonicTableSize + 1, 0.0);
        long double acc = 0.0L;
        for (Index k = 1; k <= kHarmonicTableSize; ++k) {
            acc += 1.0L / static_cast<long double>(k);
            h[k] = static_cast<double>(acc);
        }
        return h;
    }();
    return table;
}

long double harmonic(Index n) {
    if (n <= kHarmonicTableSize) {
        return harmonic_table()[n];
    }
    constexpr long double euler_gamma = 0.577215664901532860606512090082402431L;
    const long double x = static_cast<long double>(n);
    const long double inv2 = 1.0L / (x * x);
    return std::log(x) + euler_gamma + 1.0L / (2.0L * x) -
           inv2 * (1.0L / 12.0L - inv2 * (1.0L / 120.0L - inv2 / 252.0L));
}

std::shared_ptr<const std::vector<long double>> prefix_sums(const std::vector<double>& t) {
    auto prefix = std::make_shared<std::vector<long double>>(t.size() + 1, 0.0L);
    for (std::size_t k = 0; k < t.size(); ++k) {
        (*prefix)[k + 1] = (*prefix)[k] + t[k];
    }
    return prefix;
}

void require_positive_finite(double v, const std::string& what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << what << " must be positive and finite (got " << v << ")";
        throw std::invalid_argument(os.str());
    }
}

Index checked_mul(Index a, Index b) {
    if (a != 0 && b > std::numeric_limits<Index>::max() / a) {
        throw std::overflow_error("index overflow in scheme evaluation");
    }
    return a * b;
}

}  // namespace

void HorizonPolicy::validate() const {
    if (n_max == 0) {
        throw std::invalid_argument("empty horizon");
    }
    if (trend_window >= n_max) {
        throw std::invalid_argument("trend_window must be smaller than n_max");
    }
}

BetaGammaScheme::BetaGammaScheme(Map beta, Map gamma, std::string label,
                                 std::optional<Index> last_n)
    : beta_(std::move(beta)), gamma_(std::move(gamma)), label_(std::move(label)), last_n_(last_n) {}

void BetaGammaScheme::check(Index n) const {
    if (n == 0) {
        throw std::invalid_argument("scheme index n must be >= 1");
    }
    if (last_n_ && n > *last_n_) {
        throw HorizonError("n = " + std::to_string(n) + " is past the last row (" +
                           std::to_string(*last_n_) + ") of scheme " + label_);
    }
}

Index BetaGammaScheme::beta(Index n) const {
    check(n);
    return beta_(n);
}

Index BetaGammaScheme::gamma(Index n) const {
    check(n);
    return gamma_(n);
}

// ---------------------------------------------------------------------------
// Weights

WeightSequence WeightSequence::constant(double c) {
    require_positive_finite(c, "constant weight");
    WeightSequence w;
    w.term_ = [c](Index) { return c; };
    w.range_ = [c](Index lo, Index hi) {
        return hi < lo ? 0.0 : c * static_cast<double>(hi - lo + 1);
    };
    std::ostringstream os;
    os << "const:" << c;
    w.label_ = os.str();
    return w;
}

WeightSequence WeightSequence::harmonic_plus() {
    WeightSequence w;
    w.term_ = [](Index k) { return 1.0 + 1.0 / static_cast<double>(k); };
    w.range_ = [](Index lo, Index hi) {
        if (hi < lo) {
            return 0.0;
        }
        const long double tail = harmonic(hi) - harmonic(lo - 1);
        return static_cast<double>(static_cast<long double>(hi - lo + 1) + tail);
    };
    w.label_ = "harmonicplus";
    return w;
}

WeightSequence WeightSequence::from_table(std::vector<double> t, std::string label) {
    if (t.empty()) {
        throw std::invalid_argument("weight table is empty");
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
        require_positive_finite(t[k], "weight t_" + std::to_string(k + 1));
    }
    WeightSequence w;
    auto values = std::make_shared<const std::vector<double>>(std::move(t));
    auto prefix = prefix_sums(*values);
    w.capacity_ = values->size();
    w.term_ = [values](Index k) { return (*values)[k - 1]; };
    w.range_ = [prefix](Index lo, Index hi) {
        return hi < lo ? 0.0 : static_cast<double>((*prefix)[hi] - (*prefix)[lo - 1]);
    };
    w.label_ = std::move(label);
    return w;
}

WeightSequence WeightSequence::from_function(std::function<double(Index)> t, Index capacity,
                                             std::string label) {
    if (capacity == 0) {
        throw std::invalid_argument("weight capacity must be positive");
    }
    std::vector<double> values(capacity);
    for (Index k = 1; k <= capacity; ++k) {
        values[k - 1] = t(k);
    }
    return from_table(std::move(values), std::move(label));
}

WeightSequence WeightSequence::relabeled(std::string label) const {
    WeightSequence w = *this;
    w.label_ = std::move(label);
    return w;
}

double WeightSequence::at(Index k) const {
    if (k == 0) {
        throw std::invalid_argument("weight index k must be >= 1");
    }
    if (capacity_ && k > *capacity_) {
        throw HorizonError("weight index " + std::to_string(k) + " is past capacity " +
                           std::to_string(*capacity_) + " of " + label_);
    }
    return term_(k);
}

double WeightSequence::range_sum(Index lo, Index hi) const {
    if (hi < lo) {
        return 0.0;
    }
    if (lo == 0) {
        throw std::invalid_argument("weight range must start at k >= 1");
    }
    if (capacity_ && hi > *capacity_) {
        throw HorizonError("weight range end " + std::to_string(hi) + " is past capacity " +
                           std::to_string(*capacity_) + " of " + label_);
    }
    return range_(lo, hi);
}

double WeightSequence::tail_infimum(const HorizonPolicy& h) const {
    h.validate();
    const Index lo = std::max<Index>(h.trend_window, 1);
    Index hi = h.n_max;
    if (capacity_) {
        hi = std::min(hi, *capacity_);
    }
    double m = std::numeric_limits<double>::infinity();
    for (Index k = lo; k <= hi; ++k) {
        m = std::min(m, term_(k));
    }
    return m;
}

void WeightSequence::validate(const HorizonPolicy& h) const {
    if (!(at(1) > 0.0)) {
        throw std::invalid_argument("weights need t_1 > 0");
    }
    if (!(tail_infimum(h) > kHoldsMargin)) {
        throw std::invalid_argument("weights " + label_ + " approach 0 on the checked tail");
    }
}

// ---------------------------------------------------------------------------
// Scheme analysis

SchemeValidation validate_scheme(const BetaGammaScheme& s, const HorizonPolicy& h) {
    h.validate();
    SchemeValidation v;
    auto fail = [&v](Index n) {
        if (!v.first_failure) {
            v.first_failure = n;
        }
    };
    Index prev_beta = 0;
    Index prev_gamma = 0;
    for (Index n = 1; n <= h.n_max; ++n) {
        const Index b = s.beta(n);
        const Index g = s.gamma(n);
        if (b == 0 || g == 0) {
            v.non_decreasing = false;
            fail(n);
        }
        if (n > 1 && (b < prev_beta || g < prev_gamma)) {
            v.non_decreasing = false;
            fail(n);
        }
        if (g < b) {
            v.gamma_dominates = false;
            fail(n);
        }
        prev_beta = b;
        prev_gamma = g;
    }
    if (v.gamma_dominates) {
        // Gap must be non-decreasing across the tail and strictly larger at its end.
        const Index start = std::max<Index>(h.trend_window, 1);
        Index prev_gap = s.gamma(start) - s.beta(start);
        const Index first_gap = prev_gap;
        for (Index n = start + 1; n <= h.n_max; ++n) {
            const Index gap = s.gamma(n) - s.beta(n);
            if (gap < prev_gap) {
                v.gap_diverges = false;
                fail(n);
                break;
            }
            prev_gap = gap;
        }
        if (v.gap_diverges && prev_gap <= first_gap) {
            v.gap_diverges = false;
            fail(h.n_max);
        }
    } else {
        v.gap_diverges = false;
    }
    return v;
}

double weighted_total(const BetaGammaScheme& s, const WeightSequence& w, Index n) {
    const Index b = s.beta(n);
    const Index g = s.gamma(n);
    if (g < b) {
        throw std::invalid_argument("scheme " + s.label() + " has gamma < beta at n = " +
                                    std::to_string(n));
    }
    return w.range_sum(b, g);
}

Index floor_scaled(double lambda, Index y) {
    require_positive_finite(lambda, "dilation factor");
    const long double p = static_cast<long double>(lambda) * static_cast<long double>(y);
    if (p >= static_cast<long double>(std::numeric_limits<Index>::max())) {
        throw std::overflow_error("dilated index overflows");
    }
    auto r = static_cast<Index>(std::floor(p));
    // Decimal factors such as 0.29 land just below an integer product. The
    // slack tracks the rounding error of lambda, which grows with p.
    if (p - static_cast<long double>(r) > 1.0L - std::max(1e-12L, 1e-15L * p)) {
        ++r;
    }
    return r;
}

Dilation dilate(const BetaGammaScheme& s, double lambda, const HorizonPolicy& h) {
    require_positive_finite(lambda, "dilation factor");
    h.validate();
    std::ostringstream label;
    label << s.label() << "[x" << lambda << "]";
    BetaGammaScheme dilated(
        [s](Index n) { return s.beta(n); },
        [s, lambda](Index n) { return floor_scaled(lambda, s.gamma(n)); }, label.str(),
        s.last_n());
    Dilation d{std::move(dilated), {}};
    for (Index n = 1; n <= h.n_max; ++n) {
        if (d.scheme.gamma(n) < s.beta(n)) {
            d.collapsed.push_back(n);
        }
    }
    return d;
}

RatioEstimate ratio_condition(const BetaGammaScheme& s, const WeightSequence& w, double lambda,
                              const HorizonPolicy& h, RatioCondition which) {
    h.validate();
    const bool grow = which == RatioCondition::liminf_grow || which == RatioCondition::limsup_grow;
    if (grow && !(lambda > 1.0)) {
        throw std::invalid_argument("conditions 2 and 4 need lambda > 1");
    }
    if (!grow && !(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("conditions 3 and 5 need 0 < lambda < 1");
    }
    const bool is_liminf =
        which == RatioCondition::liminf_grow || which == RatioCondition::liminf_shrink;
    double est = is_liminf ? std::numeric_limits<double>::infinity() : 0.0;
    const Index start = std::max<Index>(h.trend_window, 1);
    for (Index n = start; n <= h.n_max; ++n) {
        const Index b = s.beta(n);
        const Index g = s.gamma(n);
        const double total = w.range_sum(b, g);
        const Index gd = floor_scaled(lambda, g);
        // An empty dilated window contributes a zero total.
        const double dilated_total = gd < b ? 0.0 : w.range_sum(b, gd);
        double value = 0.0;
        switch (which) {
            case RatioCondition::liminf_grow:
                value = dilated_total / total;
                break;
            case RatioCondition::liminf_shrink:
                value = dilated_total == 0.0 ? std::numeric_limits<double>::infinity()
                                             : total / dilated_total;
                break;
            case RatioCondition::limsup_grow:
            case RatioCondition::limsup_shrink: {
                const double denom = grow ? dilated_total - total : total - dilated_total;
                if (!(denom > 0.0)) {
                    throw DegenerateWindowError(
                        n, "degenerate window at n = " + std::to_string(n) +
                               ": dilated and plain totals coincide for scheme " + s.label());
                }
                value = dilated_total / denom;
                break;
            }
        }
        est = is_liminf ? std::min(est, value) : std::max(est, value);
    }
    RatioEstimate r;
    r.estimate = est;
    r.holds = is_liminf ? est > 1.0 + kHoldsMargin : std::isfinite(est);
    return r;
}

// ---------------------------------------------------------------------------
// Built-in schemes

namespace schemes {

BetaGammaScheme classical() {
    return BetaGammaScheme([](Index) -> Index { return 1; }, [](Index n) { return n; },
                           "classical");
}

BetaGammaScheme power(double p) {
    require_positive_finite(p, "power exponent");
    std::ostringstream label;
    label << "pow:" << p;
    const double rounded = std::round(p);
    if (rounded == p) {
        const auto e = static_cast<unsigned>(rounded);
        return BetaGammaScheme([](Index) -> Index { return 1; },
                               [e](Index n) {
                                   Index r = 1;
                                   for (unsigned i = 0; i < e; ++i) {
                                       r = checked_mul(r, n);
                                   }
                                   return r;
                               },
                               label.str());
    }
    return BetaGammaScheme(
        [](Index) -> Index { return 1; },
        [p](Index n) {
            return std::max<Index>(1, static_cast<Index>(std::floor(
                                          std::pow(static_cast<long double>(n), p) + 1e-12L)));
        },
        label.str());
}

BetaGammaScheme lambda_based(std::function<Index(Index)> lambda, std::string label,
                             Index check_horizon) {
    if (check_horizon < 4) {
        throw std::invalid_argument("lambda check horizon too small");
    }
    auto reject = [&label](const std::string& why, Index n) {
        throw std::invalid_argument("lambda sequence " + label + " violates " + why +
                                    " at n = " + std::to_string(n));
    };
    if (lambda(1) != 1) {
        reject("lambda_1 = 1", 1);
    }
    for (Index n = 1; n < check_horizon; ++n) {
        const Index a = lambda(n);
        const Index b = lambda(n + 1);
        if (b < a) {
            reject("non-decreasing lambda", n + 1);
        }
        if (b > a + 1) {
            reject("lambda_{n+1} <= lambda_n + 1", n + 1);
        }
        if (a > n) {
            reject("lambda_n <= n", n);
        }
    }
    if (lambda(check_horizon) <= lambda(check_horizon / 2)) {
        reject("lambda_n -> infinity (no growth over the checked tail)", check_horizon);
    }
    return BetaGammaScheme([lambda](Index n) { return n - lambda(n) + 1; },
                           [](Index n) { return n; }, "lambda:" + label);
}

BetaGammaScheme lacunary(std::function<Index(Index)> k, std::string label, Index check_horizon) {
    if (k(0) != 0) {
        throw std::invalid_argument("lacunary sequence " + label + " violates k_0 = 0");
    }
    for (Index r = 1; r <= check_horizon; ++r) {
        if (k(r) <= k(r - 1)) {
            throw std::invalid_argument("lacunary sequence " + label +
                                        " violates strictly increasing k_r at r = " +
                                        std::to_string(r));
        }
    }
    return BetaGammaScheme([k](Index r) { return k(r - 1) + 1; }, [k](Index r) { return k(r); },
                           "lacunary:" + label, check_horizon);
}

BetaGammaScheme from_table(const std::vector<std::array<Index, 3>>& rows, std::string label) {
    if (rows.empty()) {
        throw std::invalid_argument("scheme table is empty");
    }
    auto betas = std::make_shared<std::vector<Index>>();
    auto gammas = std::make_shared<std::vector<Index>>();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& [n, b, g] = rows[i];
        if (n != i + 1) {
            throw std::invalid_argument("scheme table rows must list n = 1, 2, ... in order (row " +
                                        std::to_string(i + 1) + " has n = " + std::to_string(n) +
                                        ")");
        }
        if (b == 0) {
            throw std::invalid_argument("scheme table has beta = 0 at n = " + std::to_string(n));
        }
        betas->push_back(b);
        gammas->push_back(g);
    }
    const Index last = rows.size();
    return BetaGammaScheme([betas](Index n) { return (*betas)[n - 1]; },
                           [gammas](Index n) { return (*gammas)[n - 1]; }, std::move(label), last);
}

}  // namespace schemes

}  // namespace fuzzsum
