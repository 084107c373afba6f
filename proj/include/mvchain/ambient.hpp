#ifndef MVCHAIN_AMBIENT_HPP
#define MVCHAIN_AMBIENT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mvchain/poly.hpp"

namespace mvc {

class Ambient;
using AmbientPtr = std::shared_ptr<const Ambient>;

/// Canonical residue representative in the quotient ring: dense coefficient
/// tensor indexed by (d_1,...,d_r) with 0 <= d_i < deg t_i, variable 0
/// varying fastest. Equality is coefficientwise.
struct MultiPoly {
    AmbientPtr amb;
    std::vector<GRElement> c;

    bool is_zero() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.c == b.c;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) {
        return !(a == b);
    }
    friend bool operator<(const MultiPoly& a, const MultiPoly& b) {
        return a.c < b.c;
    }
};

/// The quotient ring R[X_1,...,X_r]/<t_1(X_1),...,t_r(X_r)> with R a Galois
/// ring and every t_i monic. Multiplication convolves the tensors and folds
/// each variable back below deg t_i with precomputed reduction rows.
class Ambient : public std::enable_shared_from_this<Ambient> {
  public:
    RingPtr ring;
    std::vector<Poly> t;
    std::vector<int> e;                 // e[i] = deg t_i
    std::vector<std::size_t> stride;    // mixed-radix strides, var 0 fastest
    std::size_t N = 0;                  // prod e_i

    static AmbientPtr build(RingPtr ring, std::vector<Poly> polys);

    int nvars() const { return int(t.size()); }

    MultiPoly zero() const;
    MultiPoly one() const;
    MultiPoly constant(const GRElement& a) const;
    /// a * X_1^{degs[0]} ... X_r^{degs[r-1]}; degrees may exceed e_i - 1
    /// and are reduced.
    MultiPoly monomial(const std::vector<int>& degs, const GRElement& a) const;
    /// f(X_var) as an ambient element.
    MultiPoly from_univariate(int var, const Poly& f) const;

    MultiPoly add(const MultiPoly& a, const MultiPoly& b) const;
    MultiPoly sub(const MultiPoly& a, const MultiPoly& b) const;
    MultiPoly neg(const MultiPoly& a) const;
    MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const;
    MultiPoly scale(const GRElement& s, const MultiPoly& a) const;
    MultiPoly mul_int(const MultiPoly& a, std::int64_t k) const;
    MultiPoly pow(const MultiPoly& a, unsigned ex) const;

    std::vector<int> degrees_of(std::size_t idx) const;
    std::size_t index_of(const std::vector<int>& degs) const;

    /// The reduced ambient F_q[X]/<t_i mod p> over the residue field.
    AmbientPtr residue() const;
    /// Coefficientwise reduction into a residue ambient (from residue()).
    MultiPoly reduce_mod_p(const MultiPoly& x, const AmbientPtr& res) const;
    /// Coefficientwise lift with representatives in [0, p).
    MultiPoly lift(const MultiPoly& x) const;

    void check(const MultiPoly& x) const;

  private:
    Ambient() = default;
    // fold[v][d] = coefficients of X_v^{e_v + d} mod t_v, d < e_v - 1
    std::vector<std::vector<std::vector<GRElement>>> fold;
};

enum class AmbientKind { Semisimple, ModularPIR, ModularNonPIR };

struct Classification {
    AmbientKind kind;
    std::optional<std::size_t> repeated_index;  // unique non-square-free t_i
    PirReport pir;
};

Classification classify_ambient(const RingPtr& ring,
                                const std::vector<Poly>& polys);

/// One cyclotomic class of the semisimple variables: the Galois extension
/// Q = GR(p^n, l*|C|), its idempotent in the full ambient, and the
/// realization map Q -> eps * ambient given by the images of the powers of
/// the canonical generator of Q.
struct CycloClass {
    RingPtr Q;
    int size = 1;           // |C| = residue degree of Q over the base ring
    GRElement base_gen;     // image of the base-ring generator in Q
    MultiPoly eps;
    std::vector<MultiPoly> gen_pows;  // gen_pows[0] = eps, size Q->l

    GRElement embed_base(const GRElement& a) const;
    MultiPoly realize(const GRElement& x) const;  // x in Q
};

/// Iterated factorization of the square-free polynomials t_{vars[0]}, ...:
/// one class per chain of irreducible-factor choices, idempotents multiplied
/// through the stages. `vars` may be empty (single trivial class).
std::vector<CycloClass> semisimple_decompose(
    const AmbientPtr& amb, const std::vector<std::size_t>& vars);

/// A chain summand of a PIPQR ambient: the idempotent, the uniformizer
/// (image of g(X_special)), nilpotency n*k, residue field of size
/// q^delta with delta = |C| * deg g.
struct Summand {
    std::size_t class_index = 0;
    std::size_t factor_index = 0;
    RingPtr Q;
    int class_size = 1;
    GRElement base_gen;       // base-ring generator inside Q
    Poly g;                   // local irreducible lift over Q
    int k = 1;
    int deg_g = 1;
    int delta = 1;            // |C| * deg g
    int nilpotency = 1;       // n * k
    int var = 0;              // the distinguished variable
    MultiPoly e;
    MultiPoly uniformizer;
    std::vector<MultiPoly> gen_pows;  // images of Q-generator powers, [0] = e

    const AmbientPtr& amb() const { return e.amb; }
    MultiPoly realize(const GRElement& x) const;  // x in Q
    /// delta * n * k; the summand has q^{that} elements.
    int size_exponent() const { return delta * nilpotency; }
    std::uint64_t card() const;

    /// Chain level of x*e: least l with x*e in <uniformizer^l>, computed as
    /// nilpotency - min{m : x*e*uniformizer^m = 0}. Returns nilpotency for 0.
    int level_of(const MultiPoly& x) const;

    /// Free Z/p^nZ-module basis of the summand: gen_pow * X_var^a * e for
    /// a < k * deg_g.
    std::vector<MultiPoly> module_basis() const;
    /// The sub-basis with a < deg_g; integer combinations with coefficients
    /// in [0, p) form a transversal of the residue field.
    std::vector<MultiPoly> residue_basis() const;
};

struct Decomposition {
    AmbientPtr amb;
    std::size_t special = 0;  // index of the repeated-root variable
    std::vector<Summand> summands;
};

/// Chain-summand decomposition; requires a Semisimple or ModularPIR
/// classification and throws std::invalid_argument otherwise.
Decomposition decompose_ambient(const AmbientPtr& amb);

struct ChainCertificate {
    bool ok = false;
    std::string detail;
    std::uint64_t scanned = 0;
};

/// Structural certificate: uniformizer nilpotency exactly n*k and the
/// chain-level histogram of the summand matches a chain ring with residue
/// field q^delta. Exhaustive when the summand has at most 2^20 elements,
/// sampled otherwise.
ChainCertificate verify_chain_summand(const Decomposition& dec,
                                      std::size_t idx,
                                      std::uint64_t sample = 4096);

}  // namespace mvc

#endif
