#include "fuzzsum/fuzzy_sequences.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace fuzzsum {

XGridPolicy XGridPolicy::uniform(double a, double b, std::size_t count) {
    if (count == 0) {
        throw std::invalid_argument("x grid needs at least one point");
    }
    if (!(a <= b)) {
        throw std::invalid_argument("x grid needs a <= b");
    }
    XGridPolicy g;
    if (count == 1) {
        g.points = {a};
        return g;
    }
    g.points.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        g.points[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    g.points.back() = b;
    return g;
}

void XGridPolicy::validate(const Domain& d) const {
    if (points.empty()) {
        throw std::invalid_argument("x grid is empty");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!d.contains(points[i])) {
            std::ostringstream os;
            os << "x grid point " << points[i] << " lies outside [" << d.a << ", " << d.b << "]";
            throw std::invalid_argument(os.str());
        }
        if (i > 0 && !(points[i] > points[i - 1])) {
            throw std::invalid_argument("x grid must be strictly increasing");
        }
    }
}

FuzzyFunctionSequence::FuzzyFunctionSequence(std::string label, Domain domain, Evaluator eval,
                                             std::optional<LimitFn> claimed_limit,
                                             std::optional<SparseShape> sparse)
    : label_(std::move(label)),
      domain_(domain),
      eval_(std::move(eval)),
      limit_(std::move(claimed_limit)),
      sparse_(std::move(sparse)) {
    if (!(domain_.a <= domain_.b)) {
        throw std::invalid_argument("domain needs a <= b");
    }
}

FuzzyNumber FuzzyFunctionSequence::eval(Index k, double x) const {
    if (k == 0) {
        throw std::invalid_argument("sequence index k must be >= 1");
    }
    if (!domain_.contains(x)) {
        std::ostringstream os;
        os << "x = " << x << " lies outside the domain [" << domain_.a << ", " << domain_.b
           << "] of " << label_;
        throw std::invalid_argument(os.str());
    }
    return eval_(k, x);
}

FuzzyNumber FuzzyFunctionSequence::limit(double x) const {
    return limit_fn()(x);
}

const FuzzyFunctionSequence::LimitFn& FuzzyFunctionSequence::limit_fn() const {
    if (!limit_) {
        throw std::logic_error("family " + label_ + " has no claimed limit");
    }
    return *limit_;
}

// ---------------------------------------------------------------------------
// Integer roots

Index isqrt(Index n) {
    auto r = static_cast<Index>(std::sqrt(static_cast<long double>(n)));
    // Division keeps the comparisons clear of overflow near 2^64.
    while (r > 0 && r > n / r) {
        --r;
    }
    while (r + 1 <= n / (r + 1)) {
        ++r;
    }
    return r;
}

Index icbrt(Index n) {
    auto r = static_cast<Index>(std::cbrt(static_cast<long double>(n)));
    while (r > 0 && r > n / (r * r)) {
        --r;
    }
    while (r + 1 <= n / ((r + 1) * (r + 1))) {
        ++r;
    }
    return r;
}

bool is_square(Index n) {
    const Index r = isqrt(n);
    return r * r == n;
}

bool is_cube(Index n) {
    const Index r = icbrt(n);
    return r * r * r == n;
}

namespace {

void visit_powers(Index lo, Index hi, int power, const std::function<void(Index)>& visit) {
    if (hi < lo) {
        return;
    }
    auto root = [power](Index n) { return power == 2 ? isqrt(n) : icbrt(n); };
    auto raise = [power](Index p) { return power == 2 ? p * p : p * p * p; };
    Index p = lo <= 1 ? 1 : root(lo - 1) + 1;
    const Index last = root(hi);
    for (; p <= last; ++p) {
        visit(raise(p));
    }
}

FuzzyNumber zero() { return crisp(0.0); }

}  // namespace

// ---------------------------------------------------------------------------
// Families

namespace families {

FuzzyFunctionSequence square_indicator(double bound, Domain domain) {
    auto background = std::make_shared<const FuzzyNumber>(crisp(bound));
    std::ostringstream label;
    label << "ex3.1:M=" << bound;
    return FuzzyFunctionSequence(
        label.str(), domain,
        [background](Index k, double) { return is_square(k) ? zero() : *background; },
        [background](double) { return *background; },
        SparseShape{[background](double) { return *background; },
                    [](Index lo, Index hi, const std::function<void(Index)>& visit) {
                        visit_powers(lo, hi, 2, visit);
                    }});
}

FuzzyFunctionSequence triangular_growing(Domain domain) {
    return FuzzyFunctionSequence(
        "ex3.2", domain,
        [](Index k, double x) {
            if (!is_square(k)) {
                return zero();
            }
            const double spread = x * static_cast<double>(k);
            return triangular(0.0, spread, spread);
        },
        [](double) { return zero(); },
        SparseShape{[](double) { return zero(); },
                    [](Index lo, Index hi, const std::function<void(Index)>& visit) {
                        visit_powers(lo, hi, 2, visit);
                    }});
}

FuzzyFunctionSequence cube_triangular_decaying(Domain domain) {
    return FuzzyFunctionSequence(
        "ex3.3", domain,
        [](Index k, double x) {
            if (!is_cube(k)) {
                return zero();
            }
            const double spread = x / static_cast<double>(k);
            return triangular(0.0, spread, spread);
        },
        [](double) { return zero(); },
        SparseShape{[](double) { return zero(); },
                    [](Index lo, Index hi, const std::function<void(Index)>& visit) {
                        visit_powers(lo, hi, 3, visit);
                    }});
}

FuzzyFunctionSequence alternating_crisp(Domain domain) {
    return FuzzyFunctionSequence(
        "ex4.1", domain, [](Index k, double) { return crisp(k % 2 == 1 ? 1.0 : -1.0); },
        [](double) { return zero(); });
}

FuzzyFunctionSequence remark3_double(Index n, double bound, Domain domain) {
    if (n == 0) {
        throw std::invalid_argument("remark3 cut-off n must be >= 1");
    }
    auto background = std::make_shared<const FuzzyNumber>(crisp(bound));
    std::ostringstream label;
    label << "remark3:n=" << n;
    return FuzzyFunctionSequence(
        label.str(), domain,
        [background, n](Index k, double) {
            return k <= n && is_square(k) ? zero() : *background;
        },
        [background](double) { return *background; },
        SparseShape{[background](double) { return *background; },
                    [n](Index lo, Index hi, const std::function<void(Index)>& visit) {
                        visit_powers(lo, std::min(hi, n), 2, visit);
                    }});
}

FuzzyFunctionSequence reciprocal_crisp(Domain domain) {
    return FuzzyFunctionSequence(
        "recip", domain, [](Index k, double) { return crisp(1.0 / static_cast<double>(k)); },
        [](double) { return zero(); });
}

FuzzyFunctionSequence constant(const FuzzyNumber& value, Domain domain) {
    auto v = std::make_shared<const FuzzyNumber>(value);
    return FuzzyFunctionSequence(
        "constant", domain, [v](Index, double) { return *v; }, [v](double) { return *v; },
        SparseShape{[v](double) { return *v; },
                    [](Index, Index, const std::function<void(Index)>&) {}});
}

FuzzyFunctionSequence from_table(const std::vector<std::array<double, 3>>& rows, std::string label,
                                 Domain domain) {
    auto table = std::make_shared<std::map<Index, FuzzyNumber>>();
    for (const auto& [k, center, spread] : rows) {
        if (!(k >= 1.0) || std::floor(k) != k) {
            throw std::invalid_argument("family table index must be a positive integer");
        }
        const auto key = static_cast<Index>(k);
        if (!table->emplace(key, triangular(center, spread, spread)).second) {
            throw std::invalid_argument("family table lists k = " + std::to_string(key) + " twice");
        }
    }
    return FuzzyFunctionSequence(
        std::move(label), domain,
        [table](Index k, double) {
            const auto it = table->find(k);
            return it == table->end() ? zero() : it->second;
        },
        [](double) { return zero(); },
        SparseShape{[](double) { return zero(); },
                    [table](Index lo, Index hi, const std::function<void(Index)>& visit) {
                        for (auto it = table->lower_bound(lo); it != table->end() && it->first <= hi;
                             ++it) {
                            visit(it->first);
                        }
                    }});
}

}  // namespace families

FuzzyFunctionSequence builtin_family(const FamilySpec& spec, Domain domain) {
    if (spec.kind == "square_indicator") {
        return families::square_indicator(spec.bound, domain);
    }
    if (spec.kind == "triangular_growing") {
        return families::triangular_growing(domain);
    }
    if (spec.kind == "cube_triangular_decaying") {
        return families::cube_triangular_decaying(domain);
    }
    if (spec.kind == "alternating_crisp") {
        return families::alternating_crisp(domain);
    }
    if (spec.kind == "remark3_double") {
        return families::remark3_double(spec.n, spec.bound, domain);
    }
    if (spec.kind == "reciprocal_crisp") {
        return families::reciprocal_crisp(domain);
    }
    throw std::invalid_argument("unknown family kind '" + spec.kind + "'");
}

BoundednessReport is_bounded(const FuzzyFunctionSequence& seq, const XGridPolicy& grid,
                             Index k_max) {
    if (k_max == 0) {
        throw std::invalid_argument("is_bounded needs k_max >= 1");
    }
    grid.validate(seq.domain());
    BoundednessReport r;
    double first_half_max = 0.0;
    Index last_growth = 1;
    const Index half = k_max / 2;
    const auto origin = crisp(0.0);
    for (Index k = 1; k <= k_max; ++k) {
        for (double x : grid.points) {
            const double d = distance(seq.eval(k, x), origin);
            if (d > r.bound) {
                r.bound = d;
                last_growth = k;
            }
        }
        if (k == half) {
            first_half_max = r.bound;
        }
    }
    r.bounded = half == 0 || r.bound <= first_half_max;
    if (!r.bounded) {
        r.witness = last_growth;
    }
    return r;
}

}  // namespace fuzzsum
