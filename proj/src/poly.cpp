#include "mvchain/poly.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace mvc {

namespace {

void trim(Poly& f) {
    while (!f.c.empty() && f.c.back().is_zero()) f.c.pop_back();
}

void require_field(const Poly& f, const char* who) {
    if (!f.ring->is_field())
        throw std::invalid_argument(std::string(who) +
                                    ": residue-field polynomial required");
}

}  // namespace

bool Poly::is_monic() const {
    return !is_zero() && c.back() == ring->one();
}

GRElement Poly::coeff(std::size_t i) const {
    return i < c.size() ? c[i] : ring->zero();
}

GRElement Poly::lead() const {
    if (is_zero()) throw std::domain_error("lead of zero polynomial");
    return c.back();
}

bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.c < b.c;
}

Poly poly_zero(RingPtr ring) { return Poly{std::move(ring), {}}; }

Poly poly_one(RingPtr ring) {
    GRElement one = ring->one();
    return Poly{std::move(ring), {one}};
}

Poly poly_gen(RingPtr ring) {
    std::vector<GRElement> c{ring->zero(), ring->one()};
    return Poly{std::move(ring), std::move(c)};
}

Poly poly_make(RingPtr ring, std::vector<GRElement> coeffs) {
    for (const auto& a : coeffs) ring->check(a);
    Poly f{std::move(ring), std::move(coeffs)};
    trim(f);
    return f;
}

Poly poly_from_ints(RingPtr ring, const std::vector<std::int64_t>& coeffs) {
    std::vector<GRElement> c;
    c.reserve(coeffs.size());
    for (auto v : coeffs) c.push_back(ring->from_int(v));
    Poly f{std::move(ring), std::move(c)};
    trim(f);
    return f;
}

Poly poly_constant(const GRElement& a) {
    Poly f{a.ring, {a}};
    trim(f);
    return f;
}

Poly poly_add(const Poly& a, const Poly& b) {
    const RingPtr& r = a.ring;
    std::vector<GRElement> c;
    std::size_t n = std::max(a.c.size(), b.c.size());
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        c.push_back(r->add(a.coeff(i), b.coeff(i)));
    Poly f{r, std::move(c)};
    trim(f);
    return f;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    return poly_add(a, poly_neg(b));
}

Poly poly_neg(const Poly& a) {
    std::vector<GRElement> c;
    c.reserve(a.c.size());
    for (const auto& v : a.c) c.push_back(a.ring->neg(v));
    return Poly{a.ring, std::move(c)};
}

Poly poly_mul(const Poly& a, const Poly& b) {
    const RingPtr& r = a.ring;
    if (a.is_zero() || b.is_zero()) return poly_zero(r);
    std::vector<GRElement> c(a.c.size() + b.c.size() - 1, r->zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = r->add(c[i + j], r->mul(a.c[i], b.c[j]));
    }
    Poly f{r, std::move(c)};
    trim(f);
    return f;
}

Poly poly_scale(const GRElement& s, const Poly& a) {
    std::vector<GRElement> c;
    c.reserve(a.c.size());
    for (const auto& v : a.c) c.push_back(a.ring->mul(s, v));
    Poly f{a.ring, std::move(c)};
    trim(f);
    return f;
}

Poly poly_pow(const Poly& a, unsigned e) {
    Poly r = poly_one(a.ring);
    Poly base = a;
    while (e > 0) {
        if (e & 1u) r = poly_mul(r, base);
        base = poly_mul(base, base);
        e >>= 1u;
    }
    return r;
}

Poly poly_derivative(const Poly& a) {
    std::vector<GRElement> c;
    for (std::size_t i = 1; i < a.c.size(); ++i)
        c.push_back(a.ring->mul_int(a.c[i], std::int64_t(i)));
    Poly f{a.ring, std::move(c)};
    trim(f);
    return f;
}

GRElement poly_eval(const Poly& a, const GRElement& x) {
    GRElement acc = a.ring->zero();
    for (std::size_t i = a.c.size(); i-- > 0;)
        acc = a.ring->add(a.ring->mul(acc, x), a.c[i]);
    return acc;
}

std::pair<Poly, Poly> poly_divrem(const Poly& f, const Poly& d) {
    if (!d.is_monic()) throw std::invalid_argument("divisor must be monic");
    const RingPtr& ring = f.ring;
    std::vector<GRElement> rem = f.c;
    int dd = d.degree();
    int fd = int(rem.size()) - 1;
    if (fd < dd) return {poly_zero(ring), f};
    std::vector<GRElement> quo(fd - dd + 1, ring->zero());
    for (int i = fd; i >= dd; --i) {
        GRElement c = rem[i];
        if (c.is_zero()) continue;
        quo[i - dd] = c;
        for (int j = 0; j <= dd; ++j)
            rem[i - dd + j] = ring->sub(rem[i - dd + j], ring->mul(c, d.c[j]));
    }
    Poly q{ring, std::move(quo)};
    Poly r{ring, std::move(rem)};
    trim(q);
    trim(r);
    return {std::move(q), std::move(r)};
}

Poly poly_mod(const Poly& f, const Poly& d) { return poly_divrem(f, d).second; }

Poly poly_reduce_mod_p(const Poly& f) {
    RingPtr ff = f.ring->residue_ring();
    std::vector<GRElement> c;
    c.reserve(f.c.size());
    for (const auto& v : f.c) c.push_back(f.ring->reduce_mod_p(v));
    Poly g{std::move(ff), std::move(c)};
    trim(g);
    return g;
}

Poly poly_lift(const Poly& f, const RingPtr& target) {
    std::vector<GRElement> c;
    c.reserve(f.c.size());
    for (const auto& v : f.c) c.push_back(target->lift_from_ff(v));
    Poly g{target, std::move(c)};
    trim(g);
    return g;
}

Poly poly_div_by_p(const Poly& f) {
    std::vector<GRElement> c;
    c.reserve(f.c.size());
    for (const auto& v : f.c) c.push_back(f.ring->div_by_p(v));
    Poly g{f.ring, std::move(c)};
    trim(g);
    return g;
}

Poly poly_embed(const Poly& f, const Extension& ext) {
    std::vector<GRElement> c;
    c.reserve(f.c.size());
    for (const auto& v : f.c) c.push_back(ext.embed(v));
    Poly g{ext.ext, std::move(c)};
    trim(g);
    return g;
}

Poly poly_monic(const Poly& f) {
    if (f.is_zero()) throw std::domain_error("monic of zero polynomial");
    if (f.is_monic()) return f;
    return poly_scale(f.ring->inverse(f.lead()), f);
}

// --- residue-field routines -------------------------------------------------

Poly ff_gcd(const Poly& f, const Poly& g) {
    require_field(f, "ff_gcd");
    Poly a = f, b = g;
    if (a.is_zero() && b.is_zero())
        throw std::invalid_argument("gcd(0, 0) undefined");
    while (!b.is_zero()) {
        Poly r = poly_mod(a, poly_monic(b));
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

std::tuple<Poly, Poly, Poly> ff_ext_gcd(const Poly& f, const Poly& g) {
    require_field(f, "ff_ext_gcd");
    const RingPtr& ring = f.ring;
    Poly r0 = f, r1 = g;
    Poly s0 = poly_one(ring), s1 = poly_zero(ring);
    Poly t0 = poly_zero(ring), t1 = poly_one(ring);
    while (!r1.is_zero()) {
        GRElement lc = r1.lead();
        Poly r1m = poly_monic(r1);
        auto [q, r] = poly_divrem(r0, r1m);
        q = poly_scale(ring->inverse(lc), q);
        Poly s2 = poly_sub(s0, poly_mul(q, s1));
        Poly t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    GRElement inv = ring->inverse(r0.lead());
    return {poly_scale(inv, r0), poly_scale(inv, s0), poly_scale(inv, t0)};
}

std::vector<Poly> ff_irreducibles(const RingPtr& field, int d) {
    if (!field->is_field())
        throw std::invalid_argument("ff_irreducibles: field required");
    std::uint64_t q = field->residue_size();
    std::vector<std::vector<Poly>> smaller;
    for (int dd = 1; 2 * dd <= d; ++dd)
        smaller.push_back(ff_irreducibles(field, dd));
    std::vector<Poly> out;
    // iterate ascending coefficient vectors in lex order (index 0 slowest)
    std::vector<std::uint64_t> idx(d, 0);
    while (true) {
        std::vector<GRElement> c;
        for (int i = 0; i < d; ++i) c.push_back(field->element_from_index(idx[i]));
        c.push_back(field->one());
        Poly f{field, std::move(c)};
        bool irred = true;
        for (const auto& list : smaller) {
            for (const Poly& g : list) {
                if (poly_mod(f, g).is_zero()) {
                    irred = false;
                    break;
                }
            }
            if (!irred) break;
        }
        if (irred) out.push_back(std::move(f));
        int i = d - 1;
        while (i >= 0 && idx[i] == q - 1) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
    }
    return out;
}

std::vector<std::pair<Poly, int>> ff_factor(const Poly& f) {
    require_field(f, "ff_factor");
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("ff_factor: monic input of degree >= 1");
    const RingPtr& field = f.ring;
    std::map<Poly, int> found;
    Poly rest = f;
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        for (const Poly& g : ff_irreducibles(field, d)) {
            while (true) {
                auto [q, r] = poly_divrem(rest, g);
                if (!r.is_zero()) break;
                ++found[g];
                rest = std::move(q);
            }
            if (rest.degree() < 2 * d) break;
        }
        if (rest.degree() < 2 * d) break;
    }
    if (rest.degree() >= 1) ++found[rest];
    std::vector<std::pair<Poly, int>> out(found.begin(), found.end());
    return out;  // map order is (degree, lex)
}

bool ff_is_square_free(const Poly& f) {
    for (const auto& [g, k] : ff_factor(f))
        if (k > 1) return false;
    return true;
}

Poly square_free_part(const Poly& f) {
    require_field(f, "square_free_part");
    if (f.is_zero()) throw std::invalid_argument("square_free_part of zero");
    Poly out = poly_one(f.ring);
    for (const auto& [g, k] : ff_factor(f)) out = poly_mul(out, g);
    return out;
}

// --- Hensel machinery -------------------------------------------------------

namespace {

// Quadratic lift of tbar = fbar * gbar (coprime) to t = F * G over GR(p^n).
std::pair<Poly, Poly> hensel_lift_pair(const Poly& t, const Poly& fbar,
                                       const Poly& gbar) {
    const RingPtr& ring = t.ring;
    auto [d, sbar, tbar_cof] = ff_ext_gcd(fbar, gbar);
    if (d.degree() != 0)
        throw std::invalid_argument("hensel: factors are not coprime");
    Poly f = poly_lift(fbar, ring);
    Poly g = poly_lift(gbar, ring);
    Poly a = poly_lift(sbar, ring);
    Poly b = poly_lift(tbar_cof, ring);
    for (int prec = 1; prec < ring->n; prec *= 2) {
        // factor update
        Poly e = poly_sub(t, poly_mul(f, g));
        auto [q, r] = poly_divrem(poly_mul(b, e), f);
        Poly f1 = poly_add(f, r);
        Poly g1 = poly_add(g, poly_add(poly_mul(a, e), poly_mul(q, g)));
        // Bezout update
        Poly delta = poly_sub(
            poly_add(poly_mul(a, f1), poly_mul(b, g1)), poly_one(ring));
        auto [q2, r2] = poly_divrem(poly_mul(a, delta), f1);
        Poly a1 = poly_sub(a, r2);
        Poly b1 = poly_sub(b, poly_add(poly_mul(b, delta), poly_mul(q2, g1)));
        f = std::move(f1);
        g = std::move(g1);
        a = std::move(a1);
        b = std::move(b1);
    }
    if (poly_mul(f, g) != t)
        throw std::logic_error("hensel: lift failed to reproduce t");
    return {std::move(f), std::move(g)};
}

}  // namespace

std::vector<PrimaryFactor> hensel_primary_decompose(const Poly& t) {
    if (!t.is_monic() || t.degree() < 1)
        throw std::invalid_argument(
            "hensel_primary_decompose: monic input of degree >= 1 required");
    const RingPtr& ring = t.ring;
    Poly tbar = poly_reduce_mod_p(t);
    auto fac = ff_factor(tbar);
    std::vector<Poly> blocks;
    for (const auto& [g, k] : fac) blocks.push_back(poly_pow(g, unsigned(k)));

    std::vector<Poly> lifted;
    Poly rest = t;
    for (std::size_t j = 0; j + 1 < blocks.size(); ++j) {
        Poly other = poly_one(tbar.ring);
        for (std::size_t l = j + 1; l < blocks.size(); ++l)
            other = poly_mul(other, blocks[l]);
        auto [F, G] = hensel_lift_pair(rest, blocks[j], other);
        lifted.push_back(std::move(F));
        rest = std::move(G);
    }
    lifted.push_back(std::move(rest));

    std::vector<PrimaryFactor> out;
    for (std::size_t j = 0; j < lifted.size(); ++j) {
        PrimaryFactor pf;
        pf.G = lifted[j];
        pf.g = poly_lift(fac[j].first, ring);
        pf.k = fac[j].second;
        pf.r = fac[j].first.degree();
        pf.u = poly_div_by_p(poly_sub(pf.G, poly_pow(pf.g, unsigned(pf.k))));
        if (poly_reduce_mod_p(pf.G) != poly_pow(fac[j].first, unsigned(pf.k)))
            throw std::logic_error("hensel: block reduction mismatch");
        out.push_back(std::move(pf));
    }
    return out;
}

std::vector<Poly> crt_idempotents(const std::vector<Poly>& factors,
                                  const Poly& t) {
    if (factors.empty())
        throw std::invalid_argument("crt_idempotents: no factors");
    const RingPtr& ring = t.ring;
    if (factors.size() == 1) return {poly_one(ring)};
    std::vector<Poly> out;
    for (std::size_t j = 0; j < factors.size(); ++j) {
        Poly cofactor = poly_one(ring);
        for (std::size_t l = 0; l < factors.size(); ++l)
            if (l != j) cofactor = poly_mul(cofactor, factors[l]);
        // v = cofactor^{-1} mod G_j, from the residue field up
        Poly Gj = factors[j];
        Poly cbar = poly_mod(poly_reduce_mod_p(cofactor), poly_reduce_mod_p(Gj));
        auto [d, s, unused] = ff_ext_gcd(cbar, poly_reduce_mod_p(Gj));
        if (d.degree() != 0)
            throw std::invalid_argument("crt_idempotents: non-coprime factors");
        Poly v = poly_lift(s, ring);
        for (int prec = 1; prec < ring->n; prec *= 2) {
            Poly two = poly_from_ints(ring, {2});
            Poly corr = poly_sub(two, poly_mod(poly_mul(cofactor, v), Gj));
            v = poly_mod(poly_mul(v, corr), Gj);
        }
        out.push_back(poly_mod(poly_mul(cofactor, v), t));
    }
    // exact resolution of unity
    Poly sum = poly_zero(ring);
    for (const auto& e : out) sum = poly_add(sum, e);
    if (poly_mod(sum, t) != poly_one(ring))
        throw std::logic_error("crt_idempotents: sum != 1");
    return out;
}

PirReport pir_check(const RingPtr& ring, const std::vector<Poly>& polys) {
    PirReport rep;
    std::vector<bool> sf;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (!polys[i].is_monic() || polys[i].degree() < 1)
            throw std::invalid_argument("pir_check: monic inputs of degree >= 1");
        bool ok = ff_is_square_free(poly_reduce_mod_p(polys[i]));
        sf.push_back(ok);
        if (!ok) {
            ++bad;
            if (!rep.repeated_index) rep.repeated_index = i;
        }
    }
    if (bad > 1) {
        rep.is_pir = false;
        return rep;
    }
    if (bad == 0) {
        rep.is_pir = true;
        return rep;
    }
    const Poly& t = polys[*rep.repeated_index];
    auto factors = hensel_primary_decompose(t);
    Poly g = poly_one(ring), h = poly_one(ring);
    for (const auto& pf : factors) {
        g = poly_mul(g, pf.g);
        h = poly_mul(h, poly_pow(pf.g, unsigned(pf.k - 1)));
    }
    PirWitness w;
    w.g = g;
    w.h = h;
    if (ring->n == 1) {
        w.u = poly_zero(ring);
        w.coprime = true;
        rep.is_pir = true;
    } else {
        w.u = poly_div_by_p(poly_sub(t, poly_mul(g, h)));
        Poly ubar = poly_reduce_mod_p(w.u);
        Poly hbar = poly_reduce_mod_p(w.h);
        w.coprime = !ubar.is_zero() && ff_gcd(ubar, hbar).degree() == 0;
        rep.is_pir = w.coprime;
    }
    rep.witness = std::move(w);
    return rep;
}

}  // namespace mvc
