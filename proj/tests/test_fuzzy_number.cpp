#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fuzzsum/fuzzy_number.hpp"
#include "support/generators.hpp"

using namespace fuzzsum;
using fuzzsum::testing::Gen;
using fuzzsum::testing::kPropertyCases;

namespace {

void expect_all_cuts(const FuzzyNumber& x, double lo, double hi) {
    for (const auto& c : x.cuts()) {
        EXPECT_DOUBLE_EQ(c.lo, lo);
        EXPECT_DOUBLE_EQ(c.hi, hi);
    }
}

}  // namespace

TEST(Crisp, ZeroAndMinusOne) {
    expect_all_cuts(crisp(0.0), 0.0, 0.0);
    expect_all_cuts(crisp(-1.0), -1.0, -1.0);
    EXPECT_EQ(crisp(0.0).level_count(), kDefaultLevelCount);
}

TEST(Crisp, RejectsNonFinite) {
    EXPECT_THROW(crisp(std::numeric_limits<double>::infinity()), std::invalid_argument);
    EXPECT_THROW(crisp(std::nan("")), std::invalid_argument);
}

TEST(Crisp, DistanceIsAbsoluteDifference) {
    EXPECT_DOUBLE_EQ(distance(crisp(3.0), crisp(5.0)), 2.0);
}

TEST(Triangular, ZeroSpreadIsCrisp) {
    EXPECT_TRUE(approx_equal(triangular(0, 0, 0), crisp(0.0), 0.0));
}

TEST(Triangular, GrowingShapeDistance) {
    // x = 1, k = 4 gives spread 4.
    EXPECT_DOUBLE_EQ(distance(triangular(0, 4.0, 4.0), crisp(0.0)), 4.0);
    // k = 9, x = 0.5.
    EXPECT_DOUBLE_EQ(distance(triangular(0, 4.5, 4.5), crisp(0.0)), 4.5);
}

TEST(Triangular, HalfCut) {
    const auto t = triangular(1.0, 0.5, 0.25);
    const auto c = t.cut_at(0.5);
    EXPECT_DOUBLE_EQ(c.lo, 0.75);
    EXPECT_DOUBLE_EQ(c.hi, 1.125);
    EXPECT_EQ(t.cut(50), c);
}

TEST(Triangular, RejectsNegativeSpread) {
    EXPECT_THROW(triangular(0, -1, 1), std::invalid_argument);
    EXPECT_THROW(triangular(0, 1, -0.5), std::invalid_argument);
}

TEST(FromCuts, RejectsBrokenLadders) {
    EXPECT_THROW(FuzzyNumber::from_cuts({{0, 0}}), std::invalid_argument);
    EXPECT_THROW(FuzzyNumber::from_cuts({{0, 1}, {2, 1}}), std::invalid_argument);
    EXPECT_THROW(FuzzyNumber::from_cuts({{0, 1}, {-1, 1}}), std::invalid_argument);
    EXPECT_THROW(FuzzyNumber::from_cuts({{0, std::numeric_limits<double>::infinity()}, {0, 0}}),
                 std::invalid_argument);
    EXPECT_NO_THROW(FuzzyNumber::from_cuts({{-1, 1}, {0, 0}}));
}

TEST(LevelGrid, NeedsTwoLevels) {
    EXPECT_THROW(crisp(0.0, {1}), std::invalid_argument);
    EXPECT_NO_THROW(crisp(0.0, {2}));
}

TEST(Add, Examples) {
    EXPECT_TRUE(approx_equal(crisp(2) + crisp(3), crisp(5)));
    EXPECT_TRUE(approx_equal(triangular(1, 0.5, 0.5) + triangular(2, 1, 1), triangular(3, 1.5, 1.5)));
    const auto x = triangular(-2, 0.3, 1.7);
    EXPECT_TRUE(approx_equal(x + crisp(0), x, 0.0));
}

TEST(Add, MixedGridsResampleToFiner) {
    const auto coarse = triangular(1, 1, 1, {11});
    const auto fine = triangular(2, 2, 2, {101});
    const auto sum = coarse + fine;
    EXPECT_EQ(sum.level_count(), 101u);
    EXPECT_TRUE(approx_equal(sum, triangular(3, 3, 3)));
}

TEST(Scale, Examples) {
    const auto x = triangular(0.5, 0.1, 2.0);
    EXPECT_TRUE(approx_equal(scale(1, x), x, 0.0));
    EXPECT_TRUE(approx_equal(scale(-1, crisp(1)), crisp(-1), 0.0));
    EXPECT_TRUE(approx_equal(scale(-2, triangular(1, 0.5, 0.25)), triangular(-2, 0.5, 1)));
}

TEST(Distance, SelfIsZero) {
    const auto x = triangular(3, 1, 2);
    EXPECT_EQ(distance(x, x), 0.0);
}

TEST(PartialOrder, Examples) {
    EXPECT_TRUE(partial_leq(crisp(1), crisp(2)));
    EXPECT_FALSE(partial_leq(crisp(2), crisp(1)));
    const auto t = triangular(0, 1, 1);
    EXPECT_FALSE(partial_leq(t, crisp(0)));
    EXPECT_FALSE(partial_leq(crisp(0), t));
    EXPECT_TRUE(partial_leq(t, t));
}

TEST(EpsBand, Examples) {
    const auto x = triangular(1, 2, 3);
    auto r = lemma1_check(x, x, 0.01);
    EXPECT_TRUE(r.metric_side);
    EXPECT_TRUE(r.order_side);

    r = lemma1_check(crisp(0), triangular(0, 0.5, 0.5), 0.5);
    EXPECT_TRUE(r.metric_side);
    EXPECT_TRUE(r.order_side);

    r = lemma1_check(crisp(0), crisp(2), 1.0);
    EXPECT_FALSE(r.metric_side);
    EXPECT_FALSE(r.order_side);

    EXPECT_THROW(lemma1_check(x, x, 0.0), std::invalid_argument);
}

TEST(Resample, PreservesTriangles) {
    const auto t = triangular(1, 0.5, 0.25, {5});
    EXPECT_TRUE(approx_equal(t.resampled(101), triangular(1, 0.5, 0.25)));
    EXPECT_THROW(t.cut_at(1.5), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Properties

TEST(FuzzyProperties, MetricAxioms) {
    Gen g(11);
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto x = g.any_fuzzy();
        const auto y = g.any_fuzzy();
        const auto z = g.any_fuzzy();
        const double dxy = distance(x, y);
        ASSERT_GE(dxy, 0.0);
        ASSERT_EQ(dxy, distance(y, x));
        ASSERT_EQ(distance(x, x), 0.0);
        ASSERT_LE(distance(x, z), dxy + distance(y, z) + 1e-12);
        ASSERT_EQ(dxy == 0.0, approx_equal(x, y, 0.0));
    }
}

TEST(FuzzyProperties, HomogeneityOfScaling) {
    Gen g(12);
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto x = g.any_fuzzy();
        const auto y = g.any_fuzzy();
        const double c = g.real(-5.0, 5.0);
        const double lhs = distance(scale(c, x), scale(c, y));
        const double rhs = std::abs(c) * distance(x, y);
        ASSERT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, rhs)) << "c = " << c;
    }
}

TEST(FuzzyProperties, TranslationInvarianceExactOnLattice) {
    Gen g(13);
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto x = g.dyadic_fuzzy();
        const auto y = g.dyadic_fuzzy();
        const auto z = g.dyadic_fuzzy();
        ASSERT_EQ(distance(x + z, y + z), distance(x, y));
    }
}

TEST(FuzzyProperties, TranslationInvarianceOnGeneralInputs) {
    Gen g(14);
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto x = g.any_fuzzy();
        const auto y = g.any_fuzzy();
        const auto z = g.any_fuzzy();
        // Rounding of the sums is the only slack.
        ASSERT_NEAR(distance(x + z, y + z), distance(x, y), 1e-13 * 64);
    }
}

TEST(FuzzyProperties, SubadditivityOfSums) {
    Gen g(15);
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto x = g.any_fuzzy();
        const auto y = g.any_fuzzy();
        const auto z = g.any_fuzzy();
        const auto w = g.any_fuzzy();
        ASSERT_LE(distance(x + z, y + w), distance(x, y) + distance(z, w) + 1e-12);
    }
}

TEST(FuzzyProperties, EpsBandSidesAgree) {
    Gen g(16);
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto x = g.any_fuzzy(3.0);
        const auto y = g.coin(0.2) ? translate(x, g.real(-1, 1)) : g.any_fuzzy(3.0);
        const double d = distance(x, y);
        // Hit the boundary eps = d as well as both sides of it.
        double eps = 0.0;
        switch (g.index(0, 2)) {
            case 0:
                eps = d > 0.0 ? d : 0.5;
                break;
            case 1:
                eps = g.real(1e-6, 2.0 * d + 1.0);
                break;
            default:
                eps = d * g.real(0.5, 0.999) + 1e-9;
                break;
        }
        const auto r = lemma1_check(x, y, eps);
        ASSERT_EQ(r.metric_side, r.order_side) << "d = " << d << " eps = " << eps;
    }
}

TEST(FuzzyProperties, PartialOrderAxioms) {
    Gen g(17);
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto x = g.any_fuzzy();
        ASSERT_TRUE(partial_leq(x, x));
        // Comparable chains by construction: y = x + nonneg shape, z = y + nonneg shape.
        const auto y = x + crisp(g.real(0.0, 2.0));
        const auto z = y + crisp(g.real(0.0, 2.0));
        ASSERT_TRUE(partial_leq(x, y));
        ASSERT_TRUE(partial_leq(y, z));
        ASSERT_TRUE(partial_leq(x, z));

        const auto u = g.any_fuzzy();
        const auto v = g.any_fuzzy();
        if (partial_leq(u, v) && partial_leq(v, u)) {
            ASSERT_LE(distance(u, v), kLevelTolerance);
        }
        if (partial_leq(u, v) && partial_leq(v, x)) {
            ASSERT_TRUE(partial_leq(u, x));
        }
    }
}

TEST(FuzzyProperties, ConstructorsAndOperationsKeepNesting) {
    Gen g(18);
    for (int i = 0; i < kPropertyCases; ++i) {
        const auto x = g.any_fuzzy();
        const auto y = g.any_fuzzy();
        ASSERT_TRUE(x.satisfies_invariants());
        ASSERT_TRUE((x + y).satisfies_invariants());
        ASSERT_TRUE(scale(g.real(-10, 10), x).satisfies_invariants());
        ASSERT_TRUE(crisp(g.real(-1e6, 1e6)).satisfies_invariants());
        ASSERT_TRUE(triangular(g.real(-5, 5), g.real(0, 3), g.real(0, 3)).satisfies_invariants());
        ASSERT_TRUE(x.resampled(g.index(2, 300)).satisfies_invariants());
    }
}
