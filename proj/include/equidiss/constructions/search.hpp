#pragma once

/**
 * @file search.hpp
 * @brief Exhaustive and random search over balanced sign sequences.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "equidiss/constructions/trapezoid.hpp"
#include "equidiss/errors.hpp"

namespace equidiss {

enum class SearchMode { Exhaustive, Random };

struct SearchConfig {
    std::size_t n = 0;
    SearchMode mode = SearchMode::Exhaustive;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    std::uint64_t budget = 50000;  ///< cap on C(n-1, (n-1)/2); admits n <= 19
    long precision = 0;            ///< zero selects default_trapezoid_precision(n)
    unsigned threads = 0;          ///< zero: hardware concurrency
};

struct SearchEntry {
    SignSequence signs;
    SolveResult solve;
    BigFloat abs_epsilon;
    BigFloat range;
    BigFloat rms;
    std::optional<double> lambda;
};

struct SearchResult {
    std::vector<SearchEntry> ranked;  ///< by |eps| ascending, then + before -
    std::size_t candidates = 0;
    std::size_t no_bracket = 0;
};

/// Binomial coefficient, saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(r);
}

/// All balanced sequences of even length m that start with +, in lexicographic order (+ < -).
inline std::vector<SignSequence> canonical_balanced_sequences(std::size_t m) {
    std::vector<SignSequence> out;
    if (m == 0 || m % 2) return out;
    std::vector<int> tail(m - 1, -1);
    std::fill(tail.begin(), tail.begin() + static_cast<long>(m / 2 - 1), 1);
    // prev_permutation on a descending start walks + before - lexicographically.
    do {
        SignSequence s;
        s.signs.push_back(1);
        s.signs.insert(s.signs.end(), tail.begin(), tail.end());
        out.push_back(std::move(s));
    } while (std::prev_permutation(tail.begin(), tail.end()));
    return out;
}

/// Uniform balanced sequence of length m for sample `index`, canonicalized.
inline SignSequence random_balanced_sequence(std::size_t m, std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    SignSequence s;
    s.signs.assign(m, -1);
    std::fill(s.signs.begin(), s.signs.begin() + static_cast<long>(m / 2), 1);
    for (std::size_t i = m; i > 1; --i) std::swap(s.signs[i - 1], s.signs[rng() % i]);
    return s.canonicalized();
}

namespace detail {

inline std::optional<SearchEntry> evaluate_sequence(std::size_t n, const SignSequence& signs, long precision) {
    TrapezoidCutSpec spec{n, signs, Rational(0), precision};
    SolveResult r;
    try {
        r = solve_epsilon(spec);
    } catch (const NoBracket&) {
        return std::nullopt;
    }
    SearchEntry e;
    e.signs = signs;
    e.abs_epsilon = abs(r.epsilon);
    // Areas alpha + s eps and the top area T; mean 1/n.
    TrapezoidGeometry g(spec);
    const long P = r.precision;
    const long nl = static_cast<long>(n);
    BigFloat alpha(g.alpha, P), top(g.top, P), mean(Rational(1, nl), P);
    BigFloat hi = alpha + e.abs_epsilon, lo = alpha - e.abs_epsilon;
    if (top > hi) hi = top;
    if (top < lo) lo = top;
    e.range = hi - lo;
    BigFloat up = alpha + e.abs_epsilon - mean, down = alpha - e.abs_epsilon - mean, t = top - mean;
    BigFloat ssr = up * up * static_cast<long>((n - 1) / 2) + down * down * static_cast<long>((n - 1) / 2) + t * t;
    e.rms = sqrt(ssr / nl);
    e.lambda = lambda_of(e.range, n);
    e.solve = std::move(r);
    return e;
}

}  // namespace detail

inline bool ranked_before(const SearchEntry& a, const SearchEntry& b) {
    if (a.abs_epsilon < b.abs_epsilon) return true;
    if (b.abs_epsilon < a.abs_epsilon) return false;
    return a.signs < b.signs;
}

/**
 * Solves every candidate and ranks them. Candidates are split into
 * contiguous blocks, one per worker; each slot is written by one worker, so
 * the ranked result does not depend on the thread count.
 */
inline SearchResult search_signs(const SearchConfig& cfg) {
    if (cfg.n < 3 || cfg.n % 2 == 0) throw PreconditionFailed("search needs odd n >= 3");
    const std::size_t m = cfg.n - 1;
    const long P = cfg.precision > 0 ? cfg.precision : default_trapezoid_precision(cfg.n);

    std::vector<SignSequence> candidates;
    if (cfg.mode == SearchMode::Exhaustive) {
        const std::uint64_t count = binomial(m, m / 2);
        if (count > cfg.budget)
            throw BudgetExceeded("exhaustive search over C(" + std::to_string(m) + "," + std::to_string(m / 2) +
                                 ") = " + std::to_string(count) + " sequences exceeds the budget " +
                                 std::to_string(cfg.budget));
        candidates = canonical_balanced_sequences(m);
    } else {
        if (cfg.samples > cfg.budget)
            throw BudgetExceeded("sample count " + std::to_string(cfg.samples) + " exceeds the budget");
        std::set<SignSequence> seen;
        for (std::uint64_t j = 0; j < cfg.samples; ++j) {
            auto s = random_balanced_sequence(m, cfg.seed, j);
            if (seen.insert(s).second) candidates.push_back(std::move(s));
        }
    }

    std::vector<std::optional<SearchEntry>> slots(candidates.size());
    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, candidates.size())));
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) slots[i] = detail::evaluate_sequence(cfg.n, candidates[i], P);
    };
    if (workers <= 1) {
        run(0, candidates.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t block = (candidates.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t b = std::min(candidates.size(), w * block), e = std::min(candidates.size(), b + block);
            pool.emplace_back(run, b, e);
        }
        for (auto& t : pool) t.join();
    }

    SearchResult out;
    out.candidates = candidates.size();
    for (auto& s : slots) {
        if (s)
            out.ranked.push_back(std::move(*s));
        else
            ++out.no_bracket;
    }
    std::sort(out.ranked.begin(), out.ranked.end(), ranked_before);
    return out;
}

}  // namespace equidiss
