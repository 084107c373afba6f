#ifndef MVCHAIN_GALOIS_HPP
#define MVCHAIN_GALOIS_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvc {

class GaloisRing;
using RingPtr = std::shared_ptr<const GaloisRing>;

struct NotAUnit : std::domain_error {
    explicit NotAUnit(const std::string& what) : std::domain_error(what) {}
};

struct RingMismatch : std::invalid_argument {
    explicit RingMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Element of GR(p^n, l): l residues in [0, p^n), ascending powers of the
/// ring generator. Value type; equality is coefficient-vector equality.
struct GRElement {
    RingPtr ring;
    std::vector<std::int64_t> c;

    bool is_zero() const;
    bool is_unit() const;

    friend bool operator==(const GRElement& a, const GRElement& b) {
        return a.c == b.c;
    }
    friend bool operator!=(const GRElement& a, const GRElement& b) {
        return !(a == b);
    }
    friend bool operator<(const GRElement& a, const GRElement& b) {
        return a.c < b.c;
    }
};

/// The Galois ring GR(p^n, l) = (Z/p^nZ)[x]/<h> with h monic of degree l,
/// basic irreducible (h mod p irreducible over F_p). Immutable after
/// construction. Finite fields are the n = 1 case.
class GaloisRing : public std::enable_shared_from_this<GaloisRing> {
  public:
    std::int64_t p;
    int n;
    int l;
    std::int64_t pn;                 // p^n
    std::vector<std::int64_t> h;     // size l+1, h[l] = 1, entries in [0, p^n)

    /// Canonical ring: h is the lex-smallest monic irreducible of degree l
    /// over F_p (lex on the ascending coefficient vector), lifted with
    /// coefficients in [0, p). Deterministic.
    static RingPtr construct(std::int64_t p, int n, int l);

    /// Ring with an explicitly chosen basic irreducible modulus.
    static RingPtr with_modulus(std::int64_t p, int n,
                                std::vector<std::int64_t> h);

    bool same_ring(const GaloisRing& other) const;
    bool is_field() const { return n == 1; }

    /// p^(n*l) as unsigned; throws on overflow past 2^62.
    std::uint64_t size() const;
    std::uint64_t residue_size() const;  // p^l

    /// F_{p^l} = GR(p, l) with the reduced modulus.
    RingPtr residue_ring() const;

    GRElement zero() const;
    GRElement one() const;
    GRElement from_int(std::int64_t v) const;
    GRElement gen() const;  // the class of x
    GRElement element(std::vector<std::int64_t> coeffs) const;

    /// Index-based enumeration: idx in [0, size()), mixed radix p^n.
    GRElement element_from_index(std::uint64_t idx) const;
    std::uint64_t index_of(const GRElement& a) const;

    GRElement add(const GRElement& a, const GRElement& b) const;
    GRElement sub(const GRElement& a, const GRElement& b) const;
    GRElement neg(const GRElement& a) const;
    GRElement mul(const GRElement& a, const GRElement& b) const;
    GRElement mul_int(const GRElement& a, std::int64_t k) const;
    GRElement pow(const GRElement& a, std::uint64_t e) const;

    /// Newton lift of the residue-field inverse. Throws NotAUnit.
    GRElement inverse(const GRElement& a) const;

    /// Reduction modulo the maximal ideal <p>; result lives in residue_ring().
    GRElement reduce_mod_p(const GRElement& a) const;
    /// Coefficientwise lift with representatives in [0, p).
    GRElement lift_from_ff(const GRElement& x) const;

    /// Exact division by p; all coefficients must be divisible.
    GRElement div_by_p(const GRElement& a) const;

    /// Teichmuller representative of a's residue class: the unique x with
    /// x^{p^l} = x and x = a mod p.
    GRElement teichmuller(const GRElement& a) const;
    /// All p^l solutions of x^{p^l} = x, in residue-index order.
    std::vector<GRElement> teichmuller_set() const;
    /// A generator of the cyclic group Gamma^*: first Teichmuller element
    /// (in deterministic order) of multiplicative order p^l - 1.
    GRElement teichmuller_generator() const;

    void check(const GRElement& a) const;

  private:
    GaloisRing() = default;
};

/// A Galois extension GR(p^n, l*m) of a base ring, flat (not a tower),
/// with the compatibility embedding determined by a root of the base
/// modulus inside the extension.
struct Extension {
    RingPtr base;
    RingPtr ext;
    int m;                     // extension degree
    GRElement base_gen_image;  // root of base->h in ext

    GRElement embed(const GRElement& a) const;
    /// Lifted Frobenius sigma of ext over base (acts as t -> t^{p^l} on
    /// Teichmuller digits).
    GRElement frobenius(const GRElement& x) const;
    /// Tr(x) = sum of sigma^i(x), i < m; result expressed in the base ring.
    GRElement trace(const GRElement& x) const;
};

Extension gr_extend(RingPtr base, int m);

/// Root of a monic polynomial (ascending coefficients over `ring`) found by
/// residue-field search plus Newton lifting. The reduction must have a
/// simple root in the residue field; throws if none exists.
GRElement find_root(const RingPtr& ring,
                    const std::vector<GRElement>& monic_poly);

}  // namespace mvc

#endif
