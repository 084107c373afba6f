#ifndef MVCHAIN_ADDITIVE_HPP
#define MVCHAIN_ADDITIVE_HPP

#include "mvchain/codes.hpp"

namespace mvc {

/// The pair of quotient algebras A_2 (over F_2) and A_4 (over F_4) built from
/// the same binary polynomials, at most one of which has repeated roots.
/// Additive codes are A_2-submodules of A_4.
struct AdditiveAmbient {
    RingPtr f2;
    RingPtr f4;
    std::vector<Poly> polys;  // over F_2
    AmbientPtr A2;
    AmbientPtr A4;
    std::size_t special = 0;  // index of the repeated-root polynomial

    std::size_t length() const { return A2->N; }
};

using AdditiveAmbientPtr = std::shared_ptr<const AdditiveAmbient>;

AdditiveAmbientPtr build_additive(const std::vector<Poly>& polys);

/// Coefficientwise F_2 -> F_4 embedding of residue representatives.
MultiPoly embed_f4(const AdditiveAmbient& aa, const MultiPoly& x);

/// A 2-class of the square-free variables: odd classes stay 4-classes, even
/// classes split into two conjugate 4-classes of half the size.
struct ClassSplit {
    std::size_t class_index = 0;
    int size = 1;
    bool even = false;

    int halves() const { return even ? 2 : 1; }
};

std::vector<ClassSplit> split_classes(const AdditiveAmbient& aa);

/// One block of the additive decomposition: the chain scalar ring
/// K = F_{2^delta}[Z]/<Z^k> (a summand of A_2) together with the ideal I of
/// A_4 it acts on, free of rank 2 with ordered basis (b1, b2).
struct AdditiveSummand {
    enum class Case {
        OddDegree,     // odd class, odd deg g: I is one chain summand of A_4
        FactorSplits,  // odd class, even deg g: g splits over F_4
        ClassSplits,   // even class: two conjugate 4-classes
    };

    std::size_t a2_index = 0;  // summand index in the A_2 decomposition
    int class_size = 1;
    int delta = 1;  // |C| * deg g, over the F_2 side
    int k = 1;
    Case tag = Case::OddDegree;
    std::vector<std::size_t> children;  // summand indices in the A_4 side
    MultiPoly e4;                       // embedded A_2 idempotent
    MultiPoly b1;
    MultiPoly b2;
};

struct AdditiveDecomposition {
    AdditiveAmbientPtr amb;
    DecompositionPtr dec2;
    DecompositionPtr dec4;
    std::vector<AdditiveSummand> summands;
};

using AdditiveDecompositionPtr = std::shared_ptr<const AdditiveDecomposition>;

AdditiveDecompositionPtr decompose_additive(const AdditiveAmbientPtr& aa);

/// Canonical staircase descriptor of a K-submodule of K^2: rows (Z^a, f) and
/// (0, Z^b); exponent k encodes an absent row. f[i] is the F_{2^delta}
/// element index of the Z^i coefficient; f = Z^v * mu with
/// v >= max(0, b - (k - a)) and mu free modulo Z^{min(b-v, k-a)}.
struct SubmoduleDesc {
    int a = 0;
    int b = 0;
    std::vector<std::uint64_t> f;
};

/// Every K-submodule of K^2 exactly once.
std::vector<SubmoduleDesc> enumerate_submodules(int delta, int k);

/// Minimal number of generators of the described submodule: 0, 1 or 2. Both
/// rows collapse to one generator exactly when f = Z^{b-k+a} * unit.
int descriptor_rank(const SubmoduleDesc& d, int k);

/// Exact products over the summands; fractions always clear to integers.
std::uint64_t count_additive_codes(const AdditiveDecomposition& dec);
std::uint64_t count_single_generator(const AdditiveDecomposition& dec);

/// F_2 bitmask of an A_4 element: two bits per position, ascending powers of
/// the F_4 generator. Addition is xor.
std::uint64_t mask_of(const Ambient& a4, const MultiPoly& x);
MultiPoly poly_from_mask(const AmbientPtr& a4, std::uint64_t mask);

/// An A_2-submodule of A_4, held as the reduced F_2 basis (bitmasks) of the
/// module closure of its generators.
struct AdditiveCode {
    AdditiveDecompositionPtr dec;
    std::vector<MultiPoly> generators;
    std::vector<std::uint64_t> basis;  // reduced echelon masks
};

AdditiveCode additive_code(const AdditiveDecompositionPtr& dec,
                           const std::vector<MultiPoly>& gens);
/// One descriptor per summand, glued through the idempotents into at most
/// two global generators.
AdditiveCode code_from_descriptors(const AdditiveDecompositionPtr& dec,
                                   const std::vector<SubmoduleDesc>& descs);

std::uint64_t additive_card(const AdditiveCode& code);
bool additive_membership(const AdditiveCode& code, const MultiPoly& x);

/// Minimal number of A_2-module generators, 0, 1 or 2: the maximum over the
/// summands of dim_{F_{2^delta}}(D_s / Z D_s).
int generator_rank(const AdditiveCode& code);

/// The trace-Hermitian pairing sum_m Tr_{F4/F2}(u_m * v_m^2) on bitmasks.
int trace_pairing(std::uint64_t u, std::uint64_t v);

AdditiveCode trace_dual(const AdditiveCode& code);

struct QuantumParams {
    int n = 0;
    int k = 0;
    int d = 0;
};

/// Stabilizer parameters of a trace-self-orthogonal code: n = length,
/// k = n - log2|D|, d = min weight of D-perp minus D (of nonzero D-perp when
/// D is self-dual). Throws std::invalid_argument when D is not
/// self-orthogonal.
QuantumParams quantum_params(const AdditiveCode& code,
                             std::uint64_t cap = 1u << 24);

}  // namespace mvc

#endif
