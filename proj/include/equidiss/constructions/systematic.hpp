#pragma once

/**
 * @file systematic.hpp
 * @brief The construction behind R_C(n): a Thue-Morse cut for n' = 2^k + 1,
 * followed by (n - n')/2 applications of add_two.
 */

#include <cstddef>

#include "equidiss/constructions/add_two.hpp"
#include "equidiss/constructions/predicted.hpp"
#include "equidiss/constructions/trapezoid.hpp"

namespace equidiss {

struct SystematicConstruction {
    DissectionFile file;
    std::size_t base_n = 0;
    BigFloat base_epsilon;
    Metrics<BigFloat> metrics;
    LegalityReport legality;
};

inline SystematicConstruction systematic_construction(std::size_t n, long precision = 0) {
    if (n < 3 || n % 2 == 0) throw PreconditionFailed("systematic construction needs odd n >= 3");
    SystematicConstruction out;
    out.base_n = thue_morse_base_size(n);
    const long P = precision > 0 ? precision : default_trapezoid_precision(out.base_n);
    auto cut = build_trapezoid_cut(TrapezoidCutSpec::thue_morse_spec(out.base_n, P));
    if (!cut.legality.legal) throw Error("Thue-Morse cut is not legal: " + cut.legality.reasons.front());
    out.base_epsilon = cut.solve.epsilon;
    out.file = std::move(cut.file);
    for (std::size_t m = out.base_n; m < n; m += 2) out.file = add_two(out.file);
    const auto& phi = std::get<FramedMap<BigFloat>>(out.file.map);
    out.metrics = metrics(out.file.dissection, phi);
    out.legality = check_legality(out.file.dissection, phi);
    return out;
}

}  // namespace equidiss
