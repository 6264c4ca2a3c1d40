#pragma once

/**
 * @file tarry.hpp
 * @brief Brute-force search for equal power sum partitions of {1, ..., 2m}.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "equidiss/constructions/search.hpp"
#include "equidiss/errors.hpp"

namespace equidiss {

struct TarrySolution {
    std::vector<long> with_one;    ///< the half containing 1
    std::vector<long> complement;
};

struct TarryResult {
    unsigned k = 0;
    std::size_t max_len = 0;
    std::vector<std::size_t> lengths_searched;
    std::vector<TarrySolution> solutions;  ///< every length, ascending
};

/**
 * Partitions {1, ..., 2m} into two m-sets with sum_{a in A} a^d equal to
 * sum_{b in B} b^d for d = 0..k, for every even 2m <= max_len. The work is
 * bounded by C(max_len, max_len/2) <= budget; the default admits max_len 20.
 */
inline TarryResult tarry_escott(unsigned k, std::size_t max_len, std::uint64_t budget = 200000) {
    if (max_len % 2) throw PreconditionFailed("max_len must be even");
    const std::uint64_t work = binomial(max_len, max_len / 2);
    if (work > budget)
        throw BudgetExceeded("C(" + std::to_string(max_len) + "," + std::to_string(max_len / 2) + ") = " +
                             std::to_string(work) + " partitions exceed the budget " + std::to_string(budget));
    TarryResult out;
    out.k = k;
    out.max_len = max_len;
    for (std::size_t len = 2; len <= max_len; len += 2) {
        out.lengths_searched.push_back(len);
        const std::size_t m = len / 2;
        // powers[i][d] = i^d; totals[d] = sum over 1..len.
        std::vector<std::vector<mpz_class>> powers(len + 1, std::vector<mpz_class>(k + 1));
        std::vector<mpz_class> totals(k + 1, 0);
        for (std::size_t i = 1; i <= len; ++i) {
            mpz_class p = 1;
            for (unsigned d = 0; d <= k; ++d) {
                powers[i][d] = p;
                totals[d] += p;
                p *= static_cast<unsigned long>(i);
            }
        }
        // Choose m-1 further members of the half containing 1 from {2..len}.
        std::vector<char> pick(len - 1, 0);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(m - 1), 1);
        std::vector<mpz_class> sums(k + 1);
        do {
            for (unsigned d = 0; d <= k; ++d) sums[d] = powers[1][d];
            for (std::size_t j = 0; j < pick.size(); ++j)
                if (pick[j])
                    for (unsigned d = 0; d <= k; ++d) sums[d] += powers[j + 2][d];
            bool equal = true;
            for (unsigned d = 0; d <= k && equal; ++d) equal = 2 * sums[d] == totals[d];
            if (!equal) continue;
            TarrySolution s;
            s.with_one.push_back(1);
            for (std::size_t j = 0; j < pick.size(); ++j)
                (pick[j] ? s.with_one : s.complement).push_back(static_cast<long>(j + 2));
            out.solutions.push_back(std::move(s));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

}  // namespace equidiss
