#include <gtest/gtest.h>

#include <random>

#include "equidiss/numerics/bigfloat.hpp"
#include "equidiss/numerics/rational.hpp"
#include "equidiss/numerics/valuation.hpp"

using namespace equidiss;

namespace {

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-5000, 5000), den(1, 4096);
    return Rational(num(rng), den(rng));
}

}  // namespace

TEST(Rational, CanonicalForm) {
    Rational a(6, -4);
    EXPECT_EQ(a.str(), "-3/2");
    EXPECT_EQ(Rational(8, 4).str(), "2");
    EXPECT_EQ(Rational::parse("10/-4"), Rational(-5, 2));
    EXPECT_THROW(Rational(1, 0), DomainError);
    EXPECT_THROW(Rational(1) / Rational(0), DomainError);
    EXPECT_THROW(Rational::parse("1/x"), ParseError);
}

TEST(Rational, ArithmeticIsExact) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
    for (int i = 0; i < 1000; ++i) {
        long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        Rational lhs = (Rational(a, b) + Rational(c, d)) * Rational(b) * Rational(d);
        Rational rhs = Rational(a) * Rational(d) + Rational(c) * Rational(b);
        EXPECT_TRUE((lhs - rhs).is_zero());
    }
}

TEST(Valuation, Examples) {
    EXPECT_EQ(val2(Rational(12)), TwoAdicValue::pow2(2));
    EXPECT_TRUE(val2(Rational(0)).is_zero());
    EXPECT_EQ(val2(Rational(5, 6)), TwoAdicValue::pow2(-1));
    EXPECT_EQ(val2(Rational(1)), TwoAdicValue::pow2(0));
    EXPECT_EQ(val2(Rational(-1)), TwoAdicValue::pow2(0));
}

TEST(Valuation, FirstMaximum) {
    auto P = TwoAdicValue::pow2;
    auto Z = TwoAdicValue::zero();
    EXPECT_EQ(val2_max(P(-1), P(0), P(0)), 1);
    EXPECT_EQ(val2_max(Z, Z, P(0)), 3);
    EXPECT_EQ(val2_max(P(0), P(0), P(0)), 1);
    EXPECT_EQ(val2_max(P(3), P(-2), P(-2)), 2);
    EXPECT_LT(Z, P(1000));
    EXPECT_LT(P(2), P(1));
}

TEST(Valuation, AbsoluteValueAxioms) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        Rational a = random_rational(rng), b = random_rational(rng);
        EXPECT_EQ(val2(a * b), val2(a) * val2(b));
        auto va = val2(a), vb = val2(b), vs = val2(a + b);
        auto m = std::max(va, vb);
        EXPECT_LE(vs, m);
        if (va != vb) {
            EXPECT_EQ(vs, m);
        }
    }
}

TEST(BigFloat, LogOfOne) {
    EXPECT_TRUE(ln(BigFloat(1L, 128)).is_zero());
}

TEST(BigFloat, LogInvertsExp) {
    BigFloat e = exp(BigFloat(1L, 128));
    BigFloat err = abs(ln(e) - 1L);
    EXPECT_LE(err, exp2i(-124, 128));
}

TEST(BigFloat, LogTwoAgainstSeries) {
    // ln 2 = sum_{k>=1} 1 / (k 2^k), summed exactly; the tail after 300 terms is below 2^-300.
    Rational s(0);
    mpz_class pow2 = 1;
    for (long k = 1; k <= 300; ++k) {
        pow2 *= 2;
        s += Rational(mpz_class(1), mpz_class(k) * pow2);
    }
    BigFloat series(s, 256);
    BigFloat got = ln(BigFloat(2L, 128));
    BigFloat diff = abs(with_precision(got, 256) - series);
    // Four units in the last place at 128 bits for a value in [1/2, 1).
    EXPECT_LE(diff, exp2i(-128 - 1 + 2, 256));
    EXPECT_EQ(got.str(20).substr(0, 17), "6.931471805599453");
}

TEST(BigFloat, LogDomain) {
    EXPECT_THROW(ln(BigFloat(0L, 64)), DomainError);
    EXPECT_THROW(ln(BigFloat(-3L, 64)), DomainError);
}

TEST(BigFloat, PrecisionPropagatesAsMinimum) {
    BigFloat a(1L, 200), b(3L, 80);
    EXPECT_EQ((a / b).precision(), 80);
    EXPECT_EQ((a + a).precision(), 200);
}

TEST(BigFloat, DecimalRoundTrip) {
    std::mt19937_64 rng(3);
    for (long P : {53L, 128L, 300L, 1000L}) {
        for (int i = 0; i < 200; ++i) {
            Rational r = random_rational(rng) / Rational(static_cast<long>(rng() % 1000 + 1));
            if (r.is_zero()) continue;
            BigFloat x(r, P);
            BigFloat y = BigFloat::parse(x.str(), P);
            BigFloat rel = abs((y - x) / x);
            EXPECT_LE(rel, exp2i(1 - P, P)) << x.str();
        }
    }
    EXPECT_EQ(BigFloat::decimal_digits(128), 42u);
}

TEST(BigFloat, ExactRationalConversion) {
    BigFloat x(Rational(3, 8), 64);
    EXPECT_EQ(x.to_rational(), Rational(3, 8));
    EXPECT_THROW(BigFloat::parse("abc", 64), ParseError);
}
