#pragma once

/**
 * @file bigfloat.hpp
 * @brief Binary floating point with an explicit per-value precision.
 *
 * Backed by MPFR. Arithmetic rounds to nearest; the result of a binary
 * operation carries the smaller of the two operand precisions.
 */

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "equidiss/errors.hpp"
#include "equidiss/numerics/rational.hpp"

namespace equidiss {

inline constexpr long kDefaultPrecision = 128;

class BigFloat {
public:
    explicit BigFloat(long precision = kDefaultPrecision) {
        check_precision(precision);
        mpfr_init2(v_, precision);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(long value, long precision) : BigFloat(precision) { mpfr_set_si(v_, value, MPFR_RNDN); }
    BigFloat(int value, long precision) : BigFloat(static_cast<long>(value), precision) {}
    BigFloat(double value, long precision) : BigFloat(precision) { mpfr_set_d(v_, value, MPFR_RNDN); }
    BigFloat(const Rational& q, long precision) : BigFloat(precision) {
        mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN);
    }

    BigFloat(const BigFloat& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& other) noexcept {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_swap(v_, other.v_);
    }
    BigFloat& operator=(const BigFloat& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    /// Parses a decimal string (e.g. "1.25e-3") at the given precision.
    static BigFloat parse(std::string_view text, long precision) {
        BigFloat out(precision);
        std::string s(text);
        if (s.empty() || mpfr_set_str(out.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw ParseError("not a decimal number: '" + s + "'");
        return out;
    }

    long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Exact value as a rational number (finite values only).
    Rational to_rational() const {
        if (!is_finite()) throw DomainError("non-finite value has no rational form");
        if (is_zero()) return Rational(0);
        mpz_class mant;
        mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
        if (exp >= 0) {
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(exp));
            return Rational(mpq_class(mant * scale));
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(-exp));
        return Rational(mant, scale);
    }

    /// Number of significant decimal digits used by str(): ceil(0.302 P) + 3.
    static std::size_t decimal_digits(long precision) {
        return static_cast<std::size_t>(std::ceil(0.302 * static_cast<double>(precision))) + 3;
    }

    /// Decimal serialization with decimal_digits(P) significant digits.
    std::string str() const { return str(decimal_digits(precision())); }

    std::string str(std::size_t digits) const {
        if (mpfr_nan_p(v_)) return "nan";
        if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
        if (is_zero()) return "0";
        mpfr_exp_t exp = 0;
        char* raw_digits = mpfr_get_str(nullptr, &exp, 10, digits, v_, MPFR_RNDN);
        std::string m(raw_digits);
        mpfr_free_str(raw_digits);
        std::string out;
        if (!m.empty() && m[0] == '-') {
            out += '-';
            m.erase(0, 1);
        }
        out += m[0];
        if (m.size() > 1) {
            out += '.';
            out += m.substr(1);
        }
        out += 'e';
        out += std::to_string(static_cast<long>(exp) - 1);
        return out;
    }

    BigFloat operator-() const {
        BigFloat out(precision());
        mpfr_neg(out.v_, v_, MPFR_RNDN);
        return out;
    }

    BigFloat& operator+=(const BigFloat& rhs) { return assign_binary(rhs, mpfr_add); }
    BigFloat& operator-=(const BigFloat& rhs) { return assign_binary(rhs, mpfr_sub); }
    BigFloat& operator*=(const BigFloat& rhs) { return assign_binary(rhs, mpfr_mul); }
    BigFloat& operator/=(const BigFloat& rhs) {
        if (rhs.is_zero()) throw DomainError("division by zero");
        return assign_binary(rhs, mpfr_div);
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        if (b.is_zero()) throw DomainError("division by zero");
        return binary(a, b, mpfr_div);
    }

    // Mixed forms with integers and rationals take the BigFloat's precision.
    friend BigFloat operator+(const BigFloat& a, long b) { return a + BigFloat(b, a.precision()); }
    friend BigFloat operator-(const BigFloat& a, long b) { return a - BigFloat(b, a.precision()); }
    friend BigFloat operator*(const BigFloat& a, long b) { return a * BigFloat(b, a.precision()); }
    friend BigFloat operator/(const BigFloat& a, long b) { return a / BigFloat(b, a.precision()); }
    friend BigFloat operator+(long a, const BigFloat& b) { return BigFloat(a, b.precision()) + b; }
    friend BigFloat operator-(long a, const BigFloat& b) { return BigFloat(a, b.precision()) - b; }
    friend BigFloat operator*(long a, const BigFloat& b) { return BigFloat(a, b.precision()) * b; }
    friend BigFloat operator/(long a, const BigFloat& b) { return BigFloat(a, b.precision()) / b; }
    friend BigFloat operator*(const BigFloat& a, const Rational& b) { return a * BigFloat(b, a.precision()); }
    friend BigFloat operator+(const BigFloat& a, const Rational& b) { return a + BigFloat(b, a.precision()); }
    friend BigFloat operator-(const BigFloat& a, const Rational& b) { return a - BigFloat(b, a.precision()); }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
        if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
        int c = mpfr_cmp(a.v_, b.v_);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }
    friend bool operator==(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const BigFloat& a, long b) {
        int c = mpfr_cmp_si(a.v_, b);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }

    friend std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.str(); }

private:
    using Op = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

    static void check_precision(long precision) {
        if (precision < MPFR_PREC_MIN || precision > MPFR_PREC_MAX)
            throw DomainError("invalid precision " + std::to_string(precision));
    }

    static BigFloat binary(const BigFloat& a, const BigFloat& b, Op op) {
        BigFloat out(std::min(a.precision(), b.precision()));
        op(out.v_, a.v_, b.v_, MPFR_RNDN);
        return out;
    }

    BigFloat& assign_binary(const BigFloat& rhs, Op op) {
        long p = std::min(precision(), rhs.precision());
        if (p == precision()) {
            op(v_, v_, rhs.v_, MPFR_RNDN);
        } else {
            *this = binary(*this, rhs, op);
        }
        return *this;
    }

    mpfr_t v_;
};

inline BigFloat abs(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_abs(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

inline BigFloat sqrt(const BigFloat& x) {
    if (x.sign() < 0) throw DomainError("sqrt of a negative number");
    BigFloat out(x.precision());
    mpfr_sqrt(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

/// Natural logarithm; correctly rounded (well within the 4-ulp contract).
inline BigFloat ln(const BigFloat& x) {
    if (x.sign() <= 0) throw DomainError("logarithm of a nonpositive number: " + x.str(20));
    BigFloat out(x.precision());
    mpfr_log(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

inline BigFloat log2(const BigFloat& x) {
    if (x.sign() <= 0) throw DomainError("logarithm of a nonpositive number");
    BigFloat out(x.precision());
    mpfr_log2(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

inline BigFloat exp(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_exp(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

inline BigFloat pow(const BigFloat& base, const BigFloat& exponent) {
    BigFloat out(std::min(base.precision(), exponent.precision()));
    mpfr_pow(out.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
    return out;
}

inline BigFloat pow(const BigFloat& base, long exponent) {
    BigFloat out(base.precision());
    mpfr_pow_si(out.raw(), base.raw(), exponent, MPFR_RNDN);
    return out;
}

/// 2^e at the given precision (exact).
inline BigFloat exp2i(long e, long precision) {
    BigFloat out(precision);
    mpfr_set_ui_2exp(out.raw(), 1, e, MPFR_RNDN);
    return out;
}

/// The value at a different precision (rounded to nearest).
inline BigFloat with_precision(const BigFloat& x, long precision) {
    BigFloat out(precision);
    mpfr_set(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

}  // namespace equidiss
