#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rational numbers.
 *
 * Thin value type over GMP's mpq_class. Every value is kept in canonical
 * form (positive denominator, coprime numerator and denominator). Division
 * by zero throws instead of aborting the process.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "equidiss/errors.hpp"

namespace equidiss {

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}
    Rational(int value) : value_(static_cast<long>(value)) {}
    Rational(long numerator, long denominator) {
        if (denominator == 0) throw DomainError("rational with zero denominator");
        value_ = mpq_class(numerator, denominator);
        value_.canonicalize();
    }
    explicit Rational(const mpz_class& integer) : value_(integer) {}
    Rational(const mpz_class& numerator, const mpz_class& denominator) {
        if (denominator == 0) throw DomainError("rational with zero denominator");
        value_ = mpq_class(numerator, denominator);
        value_.canonicalize();
    }
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Parses "p/q" or "p" (base 10, optional sign).
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(mpz_class(s, 10));
            mpz_class num(s.substr(0, slash), 10);
            mpz_class den(s.substr(slash + 1), 10);
            return Rational(num, den);
        } catch (const std::invalid_argument&) {
            throw ParseError("not a rational number: '" + s + "'");
        }
    }

    const mpq_class& raw() const { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    double to_double() const { return value_.get_d(); }

    /// Canonical "p/q" with q omitted when it is 1.
    std::string str() const {
        std::string out = value_.get_num().get_str(10);
        if (value_.get_den() != 1) out += "/" + value_.get_den().get_str(10);
        return out;
    }

    Rational operator-() const { return Rational(mpq_class(-value_)); }

    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs) {
        if (rhs.is_zero()) throw DomainError("division by zero");
        value_ /= rhs.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

private:
    mpq_class value_{0};
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

/// Integer power with a nonnegative exponent.
inline Rational pow(const Rational& base, unsigned exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return Rational(num, den);
}

}  // namespace equidiss

template <>
struct std::hash<equidiss::Rational> {
    std::size_t operator()(const equidiss::Rational& q) const {
        return std::hash<std::string>{}(q.str());
    }
};
