#include <gtest/gtest.h>

#include <cmath>

#include "fuzzsum/summability.hpp"
#include "support/generators.hpp"

using namespace fuzzsum;
using fuzzsum::testing::Gen;
using fuzzsum::testing::kPropertyCases;

namespace {

const auto kZero = crisp(0.0);

ModeParams params(double theta, BetaGammaScheme s, WeightSequence w, double eps = 0.1) {
    return ModeParams{theta, eps, std::move(s), std::move(w)};
}

// Same values, no sparse hint: forces the index-by-index route.
FuzzyFunctionSequence dense_copy(const FuzzyFunctionSequence& f) {
    return FuzzyFunctionSequence(
        f.label() + "/dense", f.domain(), [f](Index k, double x) { return f.eval(k, x); },
        f.has_limit() ? std::optional<LimitFn>(f.limit_fn()) : std::nullopt);
}

std::vector<TracePoint> sampled(double (*v)(double), Index horizon) {
    std::vector<TracePoint> out;
    for (Index n : ladder(horizon)) {
        out.push_back({n, v(static_cast<double>(n))});
    }
    return out;
}

BetaGammaScheme lacunary_pow2() {
    return schemes::lacunary([](Index r) { return r == 0 ? Index{0} : Index{1} << r; }, "pow2");
}

std::vector<FuzzyFunctionSequence> all_builtins() {
    return {families::square_indicator(1.0), families::square_indicator(3.0),
            families::triangular_growing(), families::cube_triangular_decaying(),
            families::alternating_crisp(), families::remark3_double(16),
            families::reciprocal_crisp(),
            families::from_table({{2, 1.0, 0.5}, {5, -1.0, 2.0}, {11, 0.0, 0.25}}, "table")};
}

}  // namespace

TEST(AbsolutePartial, SquareIndicatorClosedForm) {
    const auto f = families::square_indicator(1.0);
    const auto p = params(1.0, schemes::classical(), WeightSequence::constant(1));
    EXPECT_DOUBLE_EQ(absolute_partial(f, f.limit_fn(), p, 100, 1.3), 0.1);
}

TEST(AbsolutePartial, ConstantSequenceIsZero) {
    const auto f = families::constant(triangular(1, 2, 3));
    const auto p = params(0.5, schemes::power(2), WeightSequence::harmonic_plus());
    for (Index n : {1, 7, 64}) {
        EXPECT_EQ(absolute_partial(f, f.limit_fn(), p, n, 1.0), 0.0);
    }
}

TEST(AbsolutePartial, AlternatingIsOne) {
    const auto f = families::alternating_crisp();
    const auto p = params(1.0, schemes::classical(), WeightSequence::constant(1));
    for (Index n = 1; n <= 300; ++n) {
        ASSERT_EQ(absolute_partial(f, f.limit_fn(), p, n, 1.5), 1.0);
    }
}

TEST(OrdinaryPartial, AlternatingMeans) {
    const auto f = families::alternating_crisp();
    const auto p = params(1.0, schemes::classical(), WeightSequence::constant(1));
    EXPECT_TRUE(approx_equal(ordinary_partial(f, p, 4, 1.0), kZero, 0.0));
    EXPECT_TRUE(approx_equal(ordinary_partial(f, p, 5, 1.0), crisp(0.2), 1e-15));
}

TEST(OrdinaryPartial, ConstantSequencesReproduceTheirValue) {
    const auto p = params(1.0, schemes::classical(), WeightSequence::constant(1));
    const auto c = families::constant(crisp(-2.5));
    const auto t = families::constant(triangular(1, 0.5, 0.5));
    for (Index n : {1, 3, 50}) {
        EXPECT_TRUE(approx_equal(ordinary_partial(c, p, n, 1.2), crisp(-2.5), 1e-12));
        EXPECT_TRUE(approx_equal(ordinary_partial(t, p, n, 1.2), triangular(1, 0.5, 0.5), 1e-12));
    }
}

TEST(SpDensity, TriangularGrowingAtTen) {
    const auto f = families::triangular_growing();
    const auto p = params(1.0, schemes::power(2), WeightSequence::constant(0.2), 0.1);
    EXPECT_EQ(sp_count(f, f.limit_fn(), p, 10, 1.0), Index{4});
    EXPECT_EQ(sp_density(f, f.limit_fn(), p, 10, 1.0), 0.2);
}

TEST(SpDensity, ConstantSequenceIsZero) {
    const auto f = families::constant(triangular(0, 1, 1));
    const auto p = params(1.0, schemes::classical(), WeightSequence::constant(1), 1e-9);
    EXPECT_EQ(sp_density(f, f.limit_fn(), p, 100, 1.0), 0.0);
}

TEST(SpDensity, CubeCountIsCubeRootOfTotal) {
    const auto f = families::cube_triangular_decaying();
    const auto p = params(0.2, schemes::power(2), WeightSequence::harmonic_plus(), 1e-12);
    for (Index n : {2, 10, 100, 1000}) {
        const double T = weighted_total(p.scheme, p.weights, n);
        EXPECT_EQ(sp_count(f, f.limit_fn(), p, n, 1.5), icbrt(floor_total(T))) << n;
    }
}

TEST(SpDensity, SaturatesForFixedEps) {
    // t_k d = x/k + x/k^2 drops under eps = 0.1 once k > 20 x, so the count stops growing.
    const auto f = families::cube_triangular_decaying();
    const auto p = params(0.2, schemes::power(2), WeightSequence::harmonic_plus(), 0.1);
    EXPECT_EQ(sp_count(f, f.limit_fn(), p, 1000, 1.0), Index{2});  // k = 1, 8
}

TEST(FloorTotal, AbsorbsRoundingBelowIntegers) {
    EXPECT_EQ(floor_total(19.999999999999996), Index{20});
    EXPECT_EQ(floor_total(19.5), Index{19});
    EXPECT_EQ(floor_total(0.0), Index{0});
    EXPECT_THROW(floor_total(-1.0), std::invalid_argument);
}

TEST(ModeParams, Validation) {
    EXPECT_THROW(params(0.0, schemes::classical(), WeightSequence::constant(1)).validate(),
                 std::invalid_argument);
    EXPECT_THROW(params(1.5, schemes::classical(), WeightSequence::constant(1)).validate(),
                 std::invalid_argument);
    EXPECT_THROW(params(1.0, schemes::classical(), WeightSequence::constant(1), 0.0).validate(),
                 std::invalid_argument);
}

TEST(Ladder, PowersOfTwoThenHorizon) {
    EXPECT_EQ(ladder(1), (std::vector<Index>{1}));
    EXPECT_EQ(ladder(64), (std::vector<Index>{1, 2, 4, 8, 16, 32, 64}));
    EXPECT_EQ(ladder(100), (std::vector<Index>{1, 2, 4, 8, 16, 32, 64, 100}));
    EXPECT_THROW(ladder(0), std::invalid_argument);
}

TEST(Verdict, ConstantZeroConverges) {
    std::vector<TracePoint> t{{1, 0}, {2, 0}, {4, 0}};
    const auto v = verdict(t, {});
    EXPECT_EQ(v.kind, VerdictKind::converges);
    EXPECT_EQ(v.limit_estimate, 0.0);
}

TEST(Verdict, FourthRootGrowth) {
    auto root4 = +[](double n) { return std::pow(n, 0.25); };
    // At n = 10^4 the value is 10, short of 10 (first + 1) = 20.
    EXPECT_EQ(verdict(sampled(root4, 10000), {}).kind, VerdictKind::inconclusive);
    EXPECT_EQ(verdict(sampled(root4, 100000000), {}).kind, VerdictKind::diverges);
}

TEST(Verdict, HarmonicTailConverges) {
    auto inv = +[](double n) { return 1.0 / n; };
    auto trace = sampled(inv, 4096);
    const std::size_t from_200 = static_cast<std::size_t>(
        std::count_if(trace.begin(), trace.end(), [](const TracePoint& p) { return p.n >= 200; }));
    const auto v = verdict(trace, {1e-2, from_200, 10.0});
    EXPECT_EQ(v.kind, VerdictKind::converges);
    EXPECT_NEAR(v.limit_estimate, 0.0, 1e-2);
}

TEST(Verdict, BadWindows) {
    std::vector<TracePoint> t{{1, 0}};
    EXPECT_THROW(verdict(t, {0.05, 2, 10.0}), std::invalid_argument);
    EXPECT_THROW(verdict({}, {}), std::invalid_argument);
}

TEST(Membership, Mapping) {
    const VerdictPolicy p;
    std::vector<TracePoint> flat_one{{1, 1}, {2, 1}, {4, 1}};
    EXPECT_EQ(membership_of(verdict(flat_one, p), flat_one, p), Membership::non_member);
    std::vector<TracePoint> falling{{1, 0.12}, {2, 0.1}, {4, 0.08}};
    EXPECT_EQ(membership_of(verdict(falling, p), falling, p), Membership::inconclusive);
    std::vector<TracePoint> small{{1, 0.03}, {2, 0.02}, {4, 0.01}};
    EXPECT_EQ(membership_of(verdict(small, p), small, p), Membership::member);
    std::vector<TracePoint> wild{{1, 0}, {2, 5}, {4, 0}};
    EXPECT_EQ(membership_of(verdict(wild, p), wild, p), Membership::inconclusive);
}

TEST(Classify, TriangularGrowingOnSquaredWindows) {
    const auto f = families::triangular_growing();
    ClassifyParams cp;
    cp.mode = params(1.0, schemes::power(2), WeightSequence::constant(0.2));
    cp.horizon = 4096;
    cp.modes = {Mode::sp};
    EXPECT_EQ(classify(f, f.limit_fn(), cp).membership(Mode::sp), Membership::member);
    cp.mode.theta = 0.25;
    cp.modes = {Mode::abs};
    EXPECT_EQ(classify(f, f.limit_fn(), cp).membership(Mode::abs), Membership::non_member);
}

TEST(Classify, CubeFamilyHarmonicWeights) {
    const auto f = families::cube_triangular_decaying();
    ClassifyParams cp;
    cp.mode = params(1.0, schemes::power(2), WeightSequence::harmonic_plus(), 1e-12);
    cp.horizon = 1 << 18;
    cp.modes = {Mode::abs};
    EXPECT_EQ(classify(f, f.limit_fn(), cp).membership(Mode::abs), Membership::member);
    cp.mode.theta = 0.2;
    cp.modes = {Mode::sp};
    EXPECT_EQ(classify(f, f.limit_fn(), cp).membership(Mode::sp), Membership::non_member);
}

TEST(Classify, AlternatingOrdinaryButNotAbsolute) {
    const auto f = families::alternating_crisp();
    ClassifyParams cp;
    cp.horizon = 4096;
    cp.modes = {Mode::ord, Mode::abs};
    const auto r = classify(f, f.limit_fn(), cp);
    EXPECT_EQ(r.membership(Mode::ord), Membership::member);
    EXPECT_EQ(r.membership(Mode::abs), Membership::non_member);
    EXPECT_THROW(r.membership(Mode::sp), std::invalid_argument);
    ASSERT_TRUE(r.cells.front().final_mean);
}

TEST(Classify, CellsOrderedAndDeterministic) {
    const auto f = families::square_indicator(2.0);
    ClassifyParams cp;
    cp.horizon = 1 << 14;
    const auto a = classify(f, f.limit_fn(), cp);
    const auto b = classify(f, f.limit_fn(), cp);
    ASSERT_EQ(a.cells.size(), 15u);
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        EXPECT_EQ(a.cells[i].x, cp.grid.points[i / 3]);
        EXPECT_EQ(a.cells[i].mode, cp.modes[i % 3]);
        ASSERT_EQ(a.cells[i].trace.size(), b.cells[i].trace.size());
        for (std::size_t j = 0; j < a.cells[i].trace.size(); ++j) {
            EXPECT_EQ(a.cells[i].trace[j].value, b.cells[i].trace[j].value);
        }
    }
}

TEST(FeasibleHorizon, ClampsHugeWindows) {
    EXPECT_EQ(feasible_horizon(families::reciprocal_crisp(), schemes::classical(), 4096), Index{4096});
    EXPECT_EQ(feasible_horizon(families::reciprocal_crisp(), schemes::power(2), 1 << 12), Index{2048});
    EXPECT_EQ(feasible_horizon(families::square_indicator(), lacunary_pow2(), 4096), Index{40});
}

// ---------------------------------------------------------------------------
// Sparse shortcut against the plain route

TEST(SparseRoute, MatchesIndexByIndexSums) {
    Gen g(41);
    std::vector<FuzzyFunctionSequence> sparse;
    for (auto& f : all_builtins()) {
        if (f.sparse()) sparse.push_back(f);
    }
    ASSERT_GE(sparse.size(), 5u);
    const std::vector<WeightSequence> weights{WeightSequence::constant(1),
                                              WeightSequence::constant(0.2),
                                              WeightSequence::harmonic_plus()};
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto& f = g.pick(sparse);
        const auto dense = dense_copy(f);
        const auto& w = g.pick(weights);
        const Index lo = g.index(1, 3000);
        const Index hi = g.index(lo > 1 ? lo - 1 : lo, lo + 3000);
        const double x = g.real(1.0, 2.0);
        const double eps = g.pick(std::vector<double>{1e-12, 0.05, 0.5, 2.0});

        const double fast = weighted_deviation_sum(f, f.limit_fn(), w, lo, hi, x);
        const double slow = weighted_deviation_sum(dense, f.limit_fn(), w, lo, hi, x);
        ASSERT_NEAR(fast, slow, 1e-9 * std::max(1.0, slow)) << f.label();

        const auto fsum = weighted_fuzzy_sum(f, w, lo, hi, x);
        const auto dsum = weighted_fuzzy_sum(dense, w, lo, hi, x);
        ASSERT_LE(distance(fsum, dsum), 1e-9 * std::max(1.0, distance(dsum, kZero))) << f.label();

        ASSERT_EQ(exceedance_count(f, f.limit_fn(), w, hi, eps, x),
                  exceedance_count(dense, f.limit_fn(), w, hi, eps, x))
            << f.label();
    }
}

TEST(SparseRoute, DeviationSumMatchesHandLoop) {
    // Oracle written out directly: squares contribute t_k M, nothing else does.
    const double M = 2.0;
    const auto f = families::square_indicator(M);
    const auto w = WeightSequence::harmonic_plus();
    for (Index hi : {Index{1}, Index{99}, Index{10000}}) {
        long double expect = 0.0L;
        for (Index p = 1; p * p <= hi; ++p) {
            expect += (1.0L + 1.0L / static_cast<long double>(p * p)) * M;
        }
        EXPECT_NEAR(weighted_deviation_sum(f, f.limit_fn(), w, 1, hi, 1.0),
                    static_cast<double>(expect), 1e-10);
    }
}

// ---------------------------------------------------------------------------
// Per-n inequalities

TEST(SummabilityProperties, OrderMonotonicity) {
    Gen g(42);
    const auto fams = all_builtins();
    const std::vector<BetaGammaScheme> schemes_under_test{schemes::classical(), schemes::power(2),
                                                          lacunary_pow2()};
    const std::vector<WeightSequence> weights{WeightSequence::constant(1),
                                              WeightSequence::constant(0.2),
                                              WeightSequence::harmonic_plus()};
    const std::vector<std::pair<double, double>> pairs{{0.3, 0.6}, {0.5, 1.0}};
    int checked = 0;
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto& f = g.pick(fams);
        const auto& s = g.pick(schemes_under_test);
        const auto& w = g.pick(weights);
        const auto [theta, delta] = g.pick(pairs);
        const Index n = g.index(1, 24);
        const double x = g.real(1.0, 2.0);
        if (weighted_total(s, w, n) < 1.0 || (!f.sparse() && s.gamma(n) > (1u << 16))) {
            continue;
        }
        const double hi = absolute_partial(f, f.limit_fn(), params(theta, s, w), n, x);
        const double lo = absolute_partial(f, f.limit_fn(), params(delta, s, w), n, x);
        ASSERT_LE(lo, hi * (1 + 1e-12)) << f.label() << " " << s.label() << " n=" << n;
        ++checked;
    }
    EXPECT_GE(checked, kPropertyCases / 2);
}

TEST(SummabilityProperties, OrdinaryDominatedByAbsolute) {
    Gen g(43);
    const auto fams = all_builtins();
    const std::vector<BetaGammaScheme> schemes_under_test{schemes::classical(), schemes::power(2),
                                                          lacunary_pow2()};
    const std::vector<WeightSequence> weights{WeightSequence::constant(1),
                                              WeightSequence::harmonic_plus()};
    int checked = 0;
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto& f = g.pick(fams);
        const auto& s = g.pick(schemes_under_test);
        const auto& w = g.pick(weights);
        const Index n = g.index(1, 24);
        if (!f.sparse() && s.gamma(n) > (1u << 14)) {
            continue;
        }
        const double x = g.real(1.0, 2.0);
        const auto p = params(1.0, s, w);
        const double ord = distance(ordinary_partial(f, p, n, x), f.limit(x));
        const double abs = absolute_partial(f, f.limit_fn(), p, n, x);
        ASSERT_LE(ord, abs + 1e-12 * std::max(1.0, abs)) << f.label() << " " << s.label() << " n=" << n;
        ++checked;
    }
    EXPECT_GE(checked, kPropertyCases / 2);
}

TEST(SummabilityProperties, StatisticalCountBoundedByWeightedSum) {
    // beta = 1 and gamma_n > T_n: every counted k lies in the window and contributes >= eps.
    Gen g(44);
    const auto fams = all_builtins();
    const auto s = schemes::power(2);
    const auto w = WeightSequence::constant(0.2);
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto& f = g.pick(fams);
        const Index n = g.index(1, f.sparse() ? 400 : 60);
        const double x = g.real(1.0, 2.0);
        const double eps = g.real(1e-3, 1.0);
        const auto p = params(1.0, s, w, eps);
        ASSERT_GT(static_cast<double>(s.gamma(n)), weighted_total(s, w, n));
        const double counted = eps * static_cast<double>(sp_count(f, f.limit_fn(), p, n, x));
        const double sum = weighted_deviation_sum(f, f.limit_fn(), w, 1, s.gamma(n), x);
        ASSERT_LE(counted, sum * (1 + 1e-12)) << f.label() << " n=" << n;
    }
}

TEST(SummabilityProperties, BoundedSumSplitsIntoLargeAndSmallTerms) {
    // Bounded families, bounded t, windows inside [1, floor T].
    Gen g(45);
    const std::vector<FuzzyFunctionSequence> bounded{
        families::square_indicator(1.0), families::alternating_crisp(),
        families::remark3_double(16), families::reciprocal_crisp(),
        families::cube_triangular_decaying()};
    const std::vector<BetaGammaScheme> schemes_under_test{schemes::classical(), schemes::power(2)};
    const std::vector<WeightSequence> weights{WeightSequence::constant(1),
                                              WeightSequence::harmonic_plus()};
    int checked = 0;
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto& f = g.pick(bounded);
        const auto& s = g.pick(schemes_under_test);
        const auto& w = g.pick(weights);
        const Index n = g.index(1, 60);
        const double x = g.real(1.0, 2.0);
        const double eps = g.real(1e-3, 0.5);
        const double T = weighted_total(s, w, n);
        if (s.gamma(n) > floor_total(T)) {
            continue;
        }
        // M2 bounds t_k d over the window; t <= 2 and d <= 2 for these families.
        const double M2 = 4.0;
        const auto p = params(1.0, s, w, eps);
        const double sum = weighted_deviation_sum(f, f.limit_fn(), w, s.beta(n), s.gamma(n), x);
        const double bound = M2 * static_cast<double>(sp_count(f, f.limit_fn(), p, n, x)) +
                             static_cast<double>(s.gamma(n) + 1) * eps;
        ASSERT_LE(sum, bound * (1 + 1e-12)) << f.label() << " n=" << n;
        ++checked;
    }
    EXPECT_GE(checked, kPropertyCases / 2);
}

TEST(SummabilityProperties, LinearityPerN) {
    Gen g(46);
    const auto fams = all_builtins();
    const auto s = schemes::classical();
    const auto w = WeightSequence::harmonic_plus();
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto& f = g.pick(fams);
        const auto& h = g.pick(fams);
        const double c = g.real(-3.0, 3.0);
        const FuzzyFunctionSequence sum(
            "sum", {}, [f, h](Index k, double x) { return f.eval(k, x) + h.eval(k, x); },
            LimitFn([f, h](double x) { return f.limit(x) + h.limit(x); }));
        const FuzzyFunctionSequence scaled(
            "scaled", {}, [f, c](Index k, double x) { return scale(c, f.eval(k, x)); },
            LimitFn([f, c](double x) { return scale(c, f.limit(x)); }));
        const Index n = g.index(1, 200);
        const double x = g.real(1.0, 2.0);
        const auto p = params(g.real(0.1, 1.0), s, w);
        const double sf = absolute_partial(f, f.limit_fn(), p, n, x);
        const double sh = absolute_partial(h, h.limit_fn(), p, n, x);
        ASSERT_LE(absolute_partial(sum, sum.limit_fn(), p, n, x), (sf + sh) * (1 + 1e-12) + 1e-12);
        ASSERT_NEAR(absolute_partial(scaled, scaled.limit_fn(), p, n, x), std::abs(c) * sf,
                    1e-12 * std::max(1.0, std::abs(c) * sf));
    }
}

TEST(SummabilityProperties, DensityBounds) {
    Gen g(47);
    const auto fams = all_builtins();
    const std::vector<WeightSequence> weights{WeightSequence::constant(1),
                                              WeightSequence::constant(0.2),
                                              WeightSequence::harmonic_plus()};
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto& f = g.pick(fams);
        const auto& w = g.pick(weights);
        const auto s = g.coin() ? schemes::classical() : schemes::power(2);
        const Index n = g.index(1, f.sparse() ? 500 : 50);
        const double x = g.real(1.0, 2.0);
        const auto p = params(g.real(0.05, 1.0), s, w, g.real(1e-6, 2.0));
        const double T = weighted_total(s, w, n);
        const double sp = sp_density(f, f.limit_fn(), p, n, x);
        ASSERT_GE(sp, 0.0);
        ASSERT_LE(sp, static_cast<double>(floor_total(T)) / std::pow(T, p.theta) * (1 + 1e-12));
        ASSERT_GE(absolute_partial(f, f.limit_fn(), p, n, x), 0.0);
    }
}
