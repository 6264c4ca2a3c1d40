#pragma once

/**
 * @file thue_morse.hpp
 * @brief Sign sequences, the Thue-Morse sequence and Prouhet's annihilation identity.
 */

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "equidiss/errors.hpp"
#include "equidiss/numerics/rational.hpp"

namespace equidiss {

struct SignSequence {
    std::vector<int> signs;  ///< entries are +1 or -1

    std::size_t size() const { return signs.size(); }
    int operator[](std::size_t i) const { return signs[i]; }

    bool canonical() const { return !signs.empty() && signs.front() == 1; }

    bool balanced() const {
        long sum = 0;
        for (int s : signs) sum += s;
        return sum == 0;
    }

    SignSequence flipped() const {
        SignSequence out = *this;
        for (int& s : out.signs) s = -s;
        return out;
    }

    /// The representative with first sign +1.
    SignSequence canonicalized() const { return canonical() || signs.empty() ? *this : flipped(); }

    std::string str() const {
        std::string out;
        for (int s : signs) out += s > 0 ? '+' : '-';
        return out;
    }

    static SignSequence parse(std::string_view text) {
        SignSequence out;
        for (char c : text) {
            if (c == '+') out.signs.push_back(1);
            else if (c == '-') out.signs.push_back(-1);
            else if (c != ' ' && c != ',') throw ParseError(std::string("bad sign character '") + c + "'");
        }
        return out;
    }

    /// Lexicographic with + before -.
    friend bool operator<(const SignSequence& a, const SignSequence& b) {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return a.size() < b.size();
    }
    friend bool operator==(const SignSequence&, const SignSequence&) = default;
};

/// s_i by the parity of the number of ones in the binary expansion of i-1.
inline int thue_morse_sign(std::uint64_t i) { return std::popcount(i - 1) % 2 == 0 ? 1 : -1; }

/// First m terms, built by s_1 = +, s_{2j-1} = s_j, s_{2j} = -s_j and checked
/// against the binary-parity rule at every index.
inline SignSequence thue_morse(std::size_t m) {
    if (m < 1) throw PreconditionFailed("thue_morse needs m >= 1");
    SignSequence out;
    out.signs.assign(m, 0);
    out.signs[0] = 1;
    for (std::size_t i = 2; i <= m; ++i) {
        std::size_t j = (i + 1) / 2;
        out.signs[i - 1] = (i % 2 == 1) ? out.signs[j - 1] : -out.signs[j - 1];
    }
    for (std::size_t i = 1; i <= m; ++i)
        if (out.signs[i - 1] != thue_morse_sign(i))
            throw Error("Thue-Morse recursion disagrees with the parity rule at index " + std::to_string(i));
    return out;
}

/// Horner evaluation of sum_j coeffs[j] x^j.
inline Rational eval_polynomial(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// sum_{i=1}^{2^k} s_i f(x0 + i b), exactly; zero whenever deg f < k.
inline Rational prouhet_check(unsigned k, const Rational& b, const Rational& x0, const std::vector<Rational>& f) {
    if (b.is_zero()) throw PreconditionFailed("prouhet_check needs b != 0");
    if (k >= 40) throw PreconditionFailed("2^k terms is too many");
    const std::size_t terms = std::size_t{1} << k;
    auto s = thue_morse(terms);
    Rational total(0);
    for (std::size_t i = 1; i <= terms; ++i) {
        Rational v = eval_polynomial(f, x0 + Rational(static_cast<long>(i)) * b);
        total += s[i - 1] > 0 ? v : -v;
    }
    return total;
}

}  // namespace equidiss
