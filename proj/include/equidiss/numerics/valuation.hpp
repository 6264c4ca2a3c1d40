#pragma once

/**
 * @file valuation.hpp
 * @brief The 2-adic absolute value on the rationals.
 *
 * |2^e r/s|_2 = 2^(-e) for odd r, s and |0|_2 = 0. Values are stored as the
 * exponent e so that comparisons stay exact for arbitrarily large e.
 */

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>

#include "equidiss/numerics/rational.hpp"

namespace equidiss {

class TwoAdicValue {
public:
    static TwoAdicValue zero() { return TwoAdicValue(true, 0); }
    /// The value 2^(-e).
    static TwoAdicValue pow2(long e) { return TwoAdicValue(false, e); }

    bool is_zero() const { return zero_; }
    /// e such that the value is 2^(-e); meaningless for zero.
    long exponent() const { return exponent_; }

    friend bool operator==(const TwoAdicValue&, const TwoAdicValue&) = default;

    /// Orders by magnitude: Zero is smallest, larger e means smaller value.
    friend std::strong_ordering operator<=>(const TwoAdicValue& a, const TwoAdicValue& b) {
        if (a.zero_ || b.zero_) return b.zero_ <=> a.zero_;
        return b.exponent_ <=> a.exponent_;
    }

    TwoAdicValue operator*(const TwoAdicValue& rhs) const {
        if (zero_ || rhs.zero_) return zero();
        return pow2(exponent_ + rhs.exponent_);
    }

    std::string str() const {
        return zero_ ? std::string("0") : "2^" + std::to_string(-exponent_);
    }
    friend std::ostream& operator<<(std::ostream& os, const TwoAdicValue& v) { return os << v.str(); }

private:
    TwoAdicValue(bool zero, long e) : zero_(zero), exponent_(zero ? 0 : e) {}

    bool zero_;
    long exponent_;
};

inline long two_adic_order(const mpz_class& z) {
    return static_cast<long>(mpz_scan1(z.get_mpz_t(), 0));
}

inline TwoAdicValue val2(const Rational& q) {
    if (q.is_zero()) return TwoAdicValue::zero();
    return TwoAdicValue::pow2(two_adic_order(q.numerator()) - two_adic_order(q.denominator()));
}

/// 1-based index of the first argument attaining the maximum.
inline int val2_max(const TwoAdicValue& a, const TwoAdicValue& b, const TwoAdicValue& c) {
    int best = 1;
    TwoAdicValue top = a;
    if (b > top) { best = 2; top = b; }
    if (c > top) { best = 3; }
    return best;
}

}  // namespace equidiss
