#pragma once

/**
 * @file scalar.hpp
 * @brief Uniform access to the three scalar kinds used by the geometry code.
 *
 * Rational is exact; BigFloat carries its own precision; double is used by
 * the local optimizer. Each kind names a "real" companion type in which
 * irrational quantities (square roots, logarithms) are evaluated.
 */

#include <cmath>
#include <cstdio>
#include <string>

#include "equidiss/numerics/bigfloat.hpp"
#include "equidiss/numerics/rational.hpp"

namespace equidiss {

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    using Real = BigFloat;
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
    static Rational from_rational(const Rational& q, long /*precision*/) { return q; }
    static Rational from_long(long v, long /*precision*/) { return Rational(v); }
    static BigFloat to_real(const Rational& q, long precision) { return BigFloat(q, precision); }
    static long precision(const Rational&) { return kDefaultPrecision; }
    static std::string str(const Rational& q) { return q.str(); }
    static double to_double(const Rational& q) { return q.to_double(); }
};

template <>
struct ScalarTraits<BigFloat> {
    using Real = BigFloat;
    static constexpr bool exact = false;
    static constexpr const char* name = "bigfloat";
    static BigFloat from_rational(const Rational& q, long precision) { return BigFloat(q, precision); }
    static BigFloat from_long(long v, long precision) { return BigFloat(v, precision); }
    static BigFloat to_real(const BigFloat& x, long /*precision*/) { return x; }
    static long precision(const BigFloat& x) { return x.precision(); }
    static std::string str(const BigFloat& x) { return x.str(); }
    static double to_double(const BigFloat& x) { return x.to_double(); }
};

template <>
struct ScalarTraits<double> {
    using Real = double;
    static constexpr bool exact = false;
    static constexpr const char* name = "double";
    static double from_rational(const Rational& q, long /*precision*/) { return q.to_double(); }
    static double from_long(long v, long /*precision*/) { return static_cast<double>(v); }
    static double to_real(double x, long /*precision*/) { return x; }
    static long precision(double) { return 53; }
    static std::string str(double x) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
    static double to_double(double x) { return x; }
};

inline double sqrt_real(double x) { return std::sqrt(x); }
inline BigFloat sqrt_real(const BigFloat& x) { return sqrt(x); }
inline double log2_real(double x) { return std::log2(x); }
inline BigFloat log2_real(const BigFloat& x) { return log2(x); }
inline double abs_scalar(double x) { return std::fabs(x); }
inline BigFloat abs_scalar(const BigFloat& x) { return abs(x); }
inline Rational abs_scalar(const Rational& x) { return abs(x); }

/// The integer v in the scalar kind of `like` (and at its precision).
template <class S>
S scalar_like(long v, const S& like) {
    return ScalarTraits<S>::from_long(v, ScalarTraits<S>::precision(like));
}

template <class S>
S scalar_like(const Rational& q, const S& like) {
    return ScalarTraits<S>::from_rational(q, ScalarTraits<S>::precision(like));
}

}  // namespace equidiss
