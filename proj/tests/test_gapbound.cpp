#include <gtest/gtest.h>

#include <cmath>

#include "equidiss/constructions/slices.hpp"
#include "equidiss/constructions/systematic.hpp"
#include "equidiss/gapbound.hpp"

using namespace equidiss;

namespace {

Rational q(long p, long r = 1) { return Rational(p, r); }

// The exponent formula in long double; the oracle for the rational code path.
long double dmm_oracle(long d, long k, long tau) {
    long double ld = std::log2(static_cast<long double>(d)), lk = std::log2(static_cast<long double>(k));
    long double lead = d * std::pow(static_cast<long double>(d - 1), static_cast<long double>(k - 1));
    long double bracket = (k * k + 3 * k + 1) * ld + (k + 1) * (d * lk + tau) + 3 * k + d + 2;
    return lead * bracket + (k * k + k) * ld / 2;
}

}  // namespace

TEST(Dmm, HandDerivedValues) {
    EXPECT_EQ(dmm_exponent({4, 1, 0}).exponent, Rational(78));
    EXPECT_EQ(dmm_exponent({4, 2, 0}).exponent, Rational(558));
    EXPECT_EQ(dmm_exponent({1, 1, 0}).exponent, Rational(6));
    EXPECT_TRUE(dmm_exponent({4, 2, 0}).exact);
    EXPECT_EQ(dmm_exponent({4, 1, 0}).str(), "78");
}

TEST(Dmm, MatchesFloatingOracle) {
    for (long d = 1; d <= 6; ++d)
        for (long k = 1; k <= 6; ++k)
            for (long tau : {0L, 3L, 17L}) {
                auto r = dmm_exponent({d, k, tau});
                long double want = dmm_oracle(d, k, tau);
                EXPECT_NEAR(r.exponent.to_double(), static_cast<double>(want), 1e-9 * (1 + std::fabs(want)))
                    << d << " " << k << " " << tau;
            }
}

TEST(Dmm, RoundsUpward) {
    for (long d : {3L, 5L, 6L, 7L})
        for (long k : {3L, 5L, 10L}) {
            auto r = dmm_exponent({d, k, 2});
            EXPECT_FALSE(r.exact);
            EXPECT_GE(r.exponent.to_double(), static_cast<double>(dmm_oracle(d, k, 2)) * (1 - 1e-15));
        }
    // Upward rounding of the logs: every log term is at least its true value.
    auto r = dmm_exponent({3, 3, 0});
    EXPECT_GE(r.trace[0].value, Rational(1584962500721156LL, 1000000000000000LL));
}

TEST(Dmm, RoundedPathEqualsExactPathOnIntegralLogs) {
    for (long d : {1L, 2L, 4L, 8L, 16L})
        for (long k : {1L, 2L, 4L, 8L, 32L})
            for (long tau : {0L, 5L, 64L})
                EXPECT_EQ(dmm_exponent({d, k, tau}, true).exponent, dmm_exponent({d, k, tau}).exponent);
}

TEST(Dmm, MonotoneOnGrid) {
    // d starts at 2: for d = 1 the factor (d-1)^(k-1) vanishes once k >= 2.
    auto X = [](long d, long k, long t) { return dmm_exponent({d, k, t}).exponent; };
    for (long d = 2; d <= 11; ++d)
        for (long k = 1; k <= 10; ++k)
            for (long t = 0; t <= 9; ++t) {
                const Rational v = X(d, k, t);
                if (d < 11) {
                    EXPECT_LE(v, X(d + 1, k, t));
                }
                if (k < 10) {
                    EXPECT_LE(v, X(d, k + 1, t));
                }
                if (t < 9) {
                    EXPECT_LE(v, X(d, k, t + 1));
                }
            }
    EXPECT_GT(X(1, 1, 0), X(1, 2, 0));
}

TEST(Dmm, RejectsBadInput) {
    EXPECT_THROW(dmm_exponent({0, 1, 0}), PreconditionFailed);
    EXPECT_THROW(dmm_exponent({2, 0, 0}), PreconditionFailed);
    EXPECT_THROW(dmm_exponent({2, 1, -1}), PreconditionFailed);
}

TEST(LowerBound, UnitSquareThreeByHand) {
    auto r = dissection_lower_bound(unit_square(), 3);
    auto find = [&](const std::string& prefix) {
        for (const auto& t : r.trace)
            if (t.label.rfind(prefix, 0) == 0) return t.value;
        ADD_FAILURE() << prefix;
        return Rational(0);
    };
    EXPECT_EQ(find("X = 2n+4"), Rational(10));
    EXPECT_EQ(find("Y "), Rational(1));
    EXPECT_EQ(find("tau"), Rational(17));
    EXPECT_EQ(find("X_dmm"), dmm_exponent({4, 10, 17}).exponent);
    // (X_dmm + log2(4*9*10^4))/2 - 2 log2(10), rounded up.
    long double x = (dmm_oracle(4, 10, 17) + std::log2(360000.0L)) / 2 - 2 * std::log2(10.0L);
    EXPECT_EQ(r.exponent, Rational(static_cast<long>(std::ceil(x))));
    EXPECT_EQ(r.str(), "24846493");
}

TEST(LowerBound, Preconditions) {
    EXPECT_THROW(dissection_lower_bound(unit_square(), 4), PreconditionFailed);
    EXPECT_NO_THROW(dissection_lower_bound(unit_square(), 4, {std::nullopt, true}));
    // Every corner of [0,2]^2 is blue: no red-blue side.
    std::vector<Point<Rational>> big{{q(0), q(0)}, {q(2), q(0)}, {q(2), q(2)}, {q(0), q(2)}};
    EXPECT_EQ(rb_side_parity(big).count, 0u);
    EXPECT_THROW(dissection_lower_bound(big, 3), PreconditionFailed);
    // Clockwise listing.
    std::vector<Point<Rational>> cw{{q(0), q(0)}, {q(0), q(1)}, {q(1), q(1)}, {q(1), q(0)}};
    EXPECT_THROW(dissection_lower_bound(cw, 3), PreconditionFailed);
    // The eight-corner example polygon has a half-integer corner and area 59/4.
    std::vector<Point<Rational>> poly8{{q(0), q(0)}, {q(2), q(0)}, {q(3), q(3)}, {q(3, 2), q(5, 2)},
                                     {q(2), q(5)}, {q(-2), q(4)}, {q(0), q(3)}, {q(-2), q(2)}};
    EXPECT_EQ(rb_side_parity(poly8).count, 1u);
    EXPECT_THROW(dissection_lower_bound(poly8, 3), PreconditionFailed);
}

TEST(LowerBound, TranslatedSquareUsesItsOwnColoring) {
    std::vector<Point<Rational>> up{{q(0), q(2)}, {q(1), q(2)}, {q(1), q(3)}, {q(0), q(3)}};
    auto r = dissection_lower_bound(up, 5);
    // Translation to the origin leaves Y = 1, so the exponent is the unit-square one.
    EXPECT_EQ(r.exponent, dissection_lower_bound(unit_square(), 5).exponent);
}

TEST(LowerBound, NodeCountVariant) {
    auto worst = dissection_lower_bound(unit_square(), 5);
    auto actual = dissection_lower_bound(unit_square(), 5, {std::size_t{6}, false});
    EXPECT_LT(actual.exponent, worst.exponent);
}

TEST(LowerBound, GrowthIsEightyOnePerTwoSteps) {
    // k = 2n+4 grows by 4 when n grows by 2, so the (d-1)^(k-1) factor
    // contributes 3^4 = 81; the bracket adds a factor tending to 1 from above.
    Rational prev_ratio(1000000);
    for (std::size_t n = 3; n <= 15; n += 2) {
        Rational ratio = dissection_lower_bound(unit_square(), n + 2).exponent /
                         dissection_lower_bound(unit_square(), n).exponent;
        const double nn = static_cast<double>(n);
        EXPECT_GT(ratio.to_double(), 81.0) << n;
        EXPECT_LT(ratio.to_double(), 81.0 * (nn + 2) * (nn + 2) / (nn * nn)) << n;
        EXPECT_LT(ratio, prev_ratio) << n;
        prev_ratio = ratio;
    }
}

TEST(LowerBound, ConstructedRangesExceedTheBound) {
    for (std::size_t n = 3; n <= 15; n += 2) {
        const double X = dissection_lower_bound(unit_square(), n).exponent.to_double();
        auto s = systematic_construction(n);
        EXPECT_LT(-log2(s.metrics.range).to_double(), X) << n;
        if (n % 4 == 1 && n >= 5) {
            auto sl = slice_family(n);
            EXPECT_LT(-log2(sl.metrics.range).to_double(), X) << n;
        }
    }
}
