#pragma once

/**
 * @file polynomial.hpp
 * @brief Sparse multivariate polynomials with rational coefficients.
 *
 * A monomial is a sorted list of (variable, exponent) pairs. Zero
 * coefficients are never stored.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "equidiss/numerics/rational.hpp"
#include "equidiss/numerics/scalar.hpp"

namespace equidiss {

using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

inline std::uint32_t monomial_degree(const Monomial& m) {
    std::uint32_t d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

class SparsePolynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    SparsePolynomial() = default;

    static SparsePolynomial constant(const Rational& c) {
        SparsePolynomial p;
        p.add_term({}, c);
        return p;
    }

    static SparsePolynomial variable(std::uint32_t v) {
        SparsePolynomial p;
        p.add_term({{v, 1}}, Rational(1));
        return p;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::uint32_t degree() const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
        return d;
    }

    /// Distinct variables occurring in some term.
    std::vector<std::uint32_t> variables() const {
        std::vector<std::uint32_t> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m) vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    SparsePolynomial& operator+=(const SparsePolynomial& rhs) {
        for (const auto& [m, c] : rhs.terms_) add_term(m, c);
        return *this;
    }
    SparsePolynomial& operator-=(const SparsePolynomial& rhs) {
        for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
        return *this;
    }
    friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
    friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }

    friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
        SparsePolynomial out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
        return out;
    }
    friend SparsePolynomial operator*(const Rational& s, const SparsePolynomial& p) {
        SparsePolynomial out;
        for (const auto& [m, c] : p.terms_) out.add_term(m, s * c);
        return out;
    }

    friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) { return a.terms_ == b.terms_; }

    /// Value at x (indexed by variable); S is Rational, BigFloat or double.
    template <class S>
    S evaluate(const std::vector<S>& x) const {
        const S& like = x.at(0);
        S total = scalar_like<S>(0, like);
        for (const auto& [m, c] : terms_) {
            S t = scalar_like<S>(c, like);
            for (const auto& [v, e] : m)
                for (std::uint32_t k = 0; k < e; ++k) t = t * x.at(v);
            total = total + t;
        }
        return total;
    }

    /// Partial derivatives at x, one entry per variable index of x.
    template <class S>
    std::vector<S> gradient(const std::vector<S>& x) const {
        const S& like = x.at(0);
        std::vector<S> g(x.size(), scalar_like<S>(0, like));
        for (const auto& [m, c] : terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                const auto [vi, ei] = m[i];
                S t = scalar_like<S>(c * Rational(static_cast<long>(ei)), like);
                for (std::size_t j = 0; j < m.size(); ++j) {
                    const auto [vj, ej] = m[j];
                    std::uint32_t power = (i == j) ? ej - 1 : ej;
                    for (std::uint32_t k = 0; k < power; ++k) t = t * x.at(vj);
                }
                g.at(vi) = g.at(vi) + t;
            }
        }
        return g;
    }

    /// Human-readable form using the names x_v / y_v for variables 2v / 2v+1.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << c;
            for (const auto& [v, e] : m) {
                os << '*' << (v % 2 == 0 ? 'x' : 'y') << '_' << v / 2;
                if (e > 1) os << '^' << e;
            }
        }
        return os.str();
    }

private:
    Terms terms_;
};

}  // namespace equidiss
