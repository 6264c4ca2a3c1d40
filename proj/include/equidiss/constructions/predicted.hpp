#pragma once

/**
 * @file predicted.hpp
 * @brief The predicted range R*(n) of the Thue-Morse trapezoid construction.
 */

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "equidiss/errors.hpp"
#include "equidiss/numerics/bigfloat.hpp"
#include "equidiss/numerics/rational.hpp"

namespace equidiss {

/// k = floor(log2 n).
inline unsigned floor_log2(std::uint64_t n) { return static_cast<unsigned>(std::bit_width(n) - 1); }

/// 2^floor(log2 n) + 1, the largest size <= n the Thue-Morse cut covers directly.
inline std::size_t thue_morse_base_size(std::size_t n) { return (std::size_t{1} << floor_log2(n)) + 1; }

struct PredictedBound {
    std::size_t n = 0;
    std::size_t base_n = 0;  ///< n' = 2^k + 1
    unsigned k = 0;
    Rational value;  ///< exact: every exponent is the integer k
    bool valid = false;

    BigFloat approx(long precision = kDefaultPrecision) const { return BigFloat(value, precision); }
};

/// R*(n) = (n'/n) * 16 / ((n'/4 - 1)^k (k + 1)); invalid when n' < 5 or R* >= 1.
inline PredictedBound predicted_bound(std::size_t n) {
    if (n < 3 || n % 2 == 0) throw PreconditionFailed("predicted_bound needs odd n >= 3");
    PredictedBound r;
    r.n = n;
    r.k = floor_log2(n);
    r.base_n = thue_morse_base_size(n);
    const Rational q = Rational(static_cast<long>(r.base_n), 4) - Rational(1);
    const Rational base = Rational(16) / (pow(q, r.k) * Rational(static_cast<long>(r.k) + 1));
    r.value = Rational(static_cast<long>(r.base_n), static_cast<long>(n)) * base;
    r.valid = r.base_n >= 5 && r.value.sign() > 0 && r.value < Rational(1);
    return r;
}

/// max(128, 4 ceil(log2(1/R*)) + 64) when R* is valid, else 128.
inline long default_trapezoid_precision(std::size_t n) {
    auto r = predicted_bound(n);
    if (!r.valid) return 128;
    double bits = -log2(r.approx(128)).to_double();
    long p = 4 * static_cast<long>(std::ceil(bits)) + 64;
    return p < 128 ? 128 : p;
}

}  // namespace equidiss
