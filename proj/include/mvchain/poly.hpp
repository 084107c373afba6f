#ifndef MVCHAIN_POLY_HPP
#define MVCHAIN_POLY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "mvchain/galois.hpp"

namespace mvc {

/// Dense univariate polynomial over a Galois ring (residue fields are the
/// n = 1 rings). Ascending coefficients, no trailing zeros; the zero
/// polynomial has an empty vector.
struct Poly {
    RingPtr ring;
    std::vector<GRElement> c;

    int degree() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const;
    GRElement coeff(std::size_t i) const;
    GRElement lead() const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b);  // (degree, lex)
};

Poly poly_zero(RingPtr ring);
Poly poly_one(RingPtr ring);
Poly poly_gen(RingPtr ring);  // X
Poly poly_make(RingPtr ring, std::vector<GRElement> coeffs);
Poly poly_from_ints(RingPtr ring, const std::vector<std::int64_t>& coeffs);
Poly poly_constant(const GRElement& a);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const GRElement& s, const Poly& a);
Poly poly_pow(const Poly& a, unsigned e);
Poly poly_derivative(const Poly& a);
GRElement poly_eval(const Poly& a, const GRElement& x);

/// f = q*d + r with deg r < deg d; d must be monic.
std::pair<Poly, Poly> poly_divrem(const Poly& f, const Poly& d);
Poly poly_mod(const Poly& f, const Poly& d);

Poly poly_reduce_mod_p(const Poly& f);
/// Coefficientwise lift with representatives in [0, p) into `target`.
Poly poly_lift(const Poly& f, const RingPtr& target);
Poly poly_div_by_p(const Poly& f);
Poly poly_embed(const Poly& f, const Extension& ext);
Poly poly_monic(const Poly& f);  // divide by the (unit) leading coefficient

// --- residue-field routines (ring->is_field() required) -------------------

Poly ff_gcd(const Poly& f, const Poly& g);
/// (gcd, s, t) with s*f + t*g = gcd, gcd monic.
std::tuple<Poly, Poly, Poly> ff_ext_gcd(const Poly& f, const Poly& g);

/// Irreducible factorization with multiplicities, deterministic trial
/// division by enumerated monic irreducibles; factors sorted by
/// (degree, lex ascending coefficient vector).
std::vector<std::pair<Poly, int>> ff_factor(const Poly& f);
bool ff_is_square_free(const Poly& f);
/// Product of the distinct irreducible factors.
Poly square_free_part(const Poly& f);
/// Monic irreducibles of degree d over the field, in lex order.
std::vector<Poly> ff_irreducibles(const RingPtr& field, int d);

// --- Hensel machinery over GR(p^n, l) --------------------------------------

/// Primary factor of a monic t: G = g^k + p*u with gbar irreducible of
/// degree r, Gbar = gbar^k, deg u < r*k.
struct PrimaryFactor {
    Poly G;
    Poly g;
    int k = 0;
    int r = 0;
    Poly u;
};

/// t = prod G_j exactly, pairwise coprime primary blocks obtained by
/// quadratic Hensel lifting of the residue-field factorization.
std::vector<PrimaryFactor> hensel_primary_decompose(const Poly& t);

/// Orthogonal idempotents e_j mod t for pairwise coprime monic factors with
/// product t: sum e_j = 1, e_j^2 = e_j, e_i e_j = 0, e_j in <prod_{l!=j} G_l>.
std::vector<Poly> crt_idempotents(const std::vector<Poly>& factors,
                                  const Poly& t);

// --- the principal-ideal criterion ------------------------------------------

struct PirWitness {
    Poly g;  // lift of the square-free part
    Poly h;
    Poly u;  // t = g*h + p*u
    bool coprime = false;
};

struct PirReport {
    bool is_pir = false;
    std::optional<std::size_t> repeated_index;
    std::optional<PirWitness> witness;
};

PirReport pir_check(const RingPtr& ring, const std::vector<Poly>& polys);

}  // namespace mvc

#endif
