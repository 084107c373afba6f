#ifndef MVCHAIN_DISTANCE_HPP
#define MVCHAIN_DISTANCE_HPP

#include <optional>

#include "mvchain/codes.hpp"

namespace mvc {

/// d is empty for the zero code (infinity sentinel, never 0).
struct DistanceReport {
    enum class Method { Exhaustive, Quotient };
    Method method = Method::Exhaustive;
    std::optional<int> d;
    std::uint64_t codewords_scanned = 0;
    std::optional<MultiPoly> witness;  // minimum-weight codeword
};

/// Number of nonzero positions in the canonical residue tensor.
int hamming_weight(const MultiPoly& x);

DistanceReport min_distance_exhaustive(const Code& code,
                                       std::uint64_t cap = 1u << 24);

/// The residue-field code L = <Hbar_1, ..., Hbar_n> in the reduced ambient,
/// held as a row-reduced F_q basis of its monomial shifts.
struct QuotientCode {
    AmbientPtr amb;  // residue ambient
    std::vector<MultiPoly> basis;

    std::uint64_t card() const;
};

QuotientCode quotient_code(const Code& code);

/// d(K) computed as the exhaustive distance of the quotient code; equal to
/// min_distance_exhaustive(code).d whenever both are within cap.
DistanceReport min_distance_via_quotient(const Code& code,
                                         std::uint64_t cap = 1u << 24);

}  // namespace mvc

#endif
