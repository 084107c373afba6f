#include "mvchain/galois.hpp"

#include <algorithm>
#include <cassert>

#include "modlin.hpp"

namespace mvc {

namespace {

using i64 = std::int64_t;

i64 norm(i64 a, i64 m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

i64 ipow_checked(i64 base, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (i64(1) << 62) / base)
            throw std::overflow_error("ring size exceeds 2^62");
        r *= base;
    }
    return r;
}

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// --- tiny F_p polynomial helpers for modulus selection -------------------
using FpPoly = std::vector<i64>;  // ascending, may carry trailing zeros

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = norm(r[i + j] + a[i] * b[j], p);
    fp_trim(r);
    return r;
}

// remainder of a by monic d
FpPoly fp_rem(FpPoly a, const FpPoly& d, i64 p) {
    fp_trim(a);
    while (a.size() >= d.size()) {
        i64 c = a.back();
        std::size_t shift = a.size() - d.size();
        for (std::size_t j = 0; j < d.size(); ++j)
            a[shift + j] = norm(a[shift + j] - c * d[j], p);
        fp_trim(a);
    }
    return a;
}

// monic f of degree >= 1, trial division by every monic poly of degree
// 1..deg(f)/2
bool fp_is_irreducible(const FpPoly& f, i64 p) {
    int deg = int(f.size()) - 1;
    if (deg <= 0) return false;
    for (int d = 1; 2 * d <= deg; ++d) {
        // iterate monic candidates of degree d
        FpPoly cand(d + 1, 0);
        cand[d] = 1;
        while (true) {
            if (fp_rem(f, cand, p).empty()) return false;
            int i = 0;
            while (i < d && cand[i] == p - 1) cand[i++] = 0;
            if (i == d) break;
            ++cand[i];
        }
    }
    return true;
}

// lex-smallest monic irreducible of degree l over F_p, ascending coeffs
FpPoly lex_smallest_irreducible(i64 p, int l) {
    FpPoly c(l, 0);
    while (true) {
        FpPoly f = c;
        f.push_back(1);
        if (fp_is_irreducible(f, p)) return f;
        // lex order on (c0, c1, ..., c_{l-1}): last index varies fastest
        int i = l - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) throw std::logic_error("no irreducible found");
        ++c[i];
    }
}

}  // namespace

bool GRElement::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](i64 v) { return v == 0; });
}

bool GRElement::is_unit() const {
    return std::any_of(c.begin(), c.end(),
                       [&](i64 v) { return v % ring->p != 0; });
}

RingPtr GaloisRing::construct(std::int64_t p, int n, int l) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (n < 1 || l < 1) throw std::invalid_argument("n and l must be >= 1");
    FpPoly h = lex_smallest_irreducible(p, l);
    return with_modulus(p, n, std::move(h));
}

RingPtr GaloisRing::with_modulus(std::int64_t p, int n,
                                 std::vector<std::int64_t> h) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    auto ring = std::shared_ptr<GaloisRing>(new GaloisRing());
    ring->p = p;
    ring->n = n;
    ring->l = int(h.size()) - 1;
    if (ring->l < 1) throw std::invalid_argument("modulus must have degree >= 1");
    ring->pn = ipow_checked(p, n);
    for (auto& v : h) v = norm(v, ring->pn);
    if (h.back() != 1) throw std::invalid_argument("modulus must be monic");
    FpPoly hbar(h.begin(), h.end());
    for (auto& v : hbar) v = norm(v, p);
    if (!fp_is_irreducible(hbar, p))
        throw std::invalid_argument("modulus is not basic irreducible");
    ring->h = std::move(h);
    return ring;
}

bool GaloisRing::same_ring(const GaloisRing& other) const {
    return p == other.p && n == other.n && l == other.l && h == other.h;
}

std::uint64_t GaloisRing::size() const {
    return std::uint64_t(ipow_checked(p, n * l));
}

std::uint64_t GaloisRing::residue_size() const {
    return std::uint64_t(ipow_checked(p, l));
}

RingPtr GaloisRing::residue_ring() const {
    if (n == 1) return shared_from_this();
    std::vector<i64> hb = h;
    for (auto& v : hb) v = norm(v, p);
    return with_modulus(p, 1, std::move(hb));
}

GRElement GaloisRing::zero() const {
    return GRElement{shared_from_this(), std::vector<i64>(l, 0)};
}

GRElement GaloisRing::one() const { return from_int(1); }

GRElement GaloisRing::from_int(std::int64_t v) const {
    std::vector<i64> c(l, 0);
    c[0] = norm(v, pn);
    return GRElement{shared_from_this(), std::move(c)};
}

GRElement GaloisRing::gen() const {
    if (l == 1) return from_int(norm(-h[0], pn));
    std::vector<i64> c(l, 0);
    c[1] = 1;
    return GRElement{shared_from_this(), std::move(c)};
}

GRElement GaloisRing::element(std::vector<std::int64_t> coeffs) const {
    if (int(coeffs.size()) != l)
        throw std::invalid_argument("wrong coefficient count");
    for (auto& v : coeffs) v = norm(v, pn);
    return GRElement{shared_from_this(), std::move(coeffs)};
}

GRElement GaloisRing::element_from_index(std::uint64_t idx) const {
    std::vector<i64> c(l, 0);
    for (int j = 0; j < l; ++j) {
        c[j] = i64(idx % std::uint64_t(pn));
        idx /= std::uint64_t(pn);
    }
    return GRElement{shared_from_this(), std::move(c)};
}

std::uint64_t GaloisRing::index_of(const GRElement& a) const {
    check(a);
    std::uint64_t idx = 0;
    for (int j = l - 1; j >= 0; --j)
        idx = idx * std::uint64_t(pn) + std::uint64_t(a.c[j]);
    return idx;
}

void GaloisRing::check(const GRElement& a) const {
    if (!a.ring || !same_ring(*a.ring)) throw RingMismatch("ring mismatch");
    if (int(a.c.size()) != l) throw RingMismatch("bad coefficient count");
}

GRElement GaloisRing::add(const GRElement& a, const GRElement& b) const {
    check(a);
    check(b);
    std::vector<i64> c(l);
    for (int j = 0; j < l; ++j) c[j] = norm(a.c[j] + b.c[j], pn);
    return GRElement{shared_from_this(), std::move(c)};
}

GRElement GaloisRing::sub(const GRElement& a, const GRElement& b) const {
    check(a);
    check(b);
    std::vector<i64> c(l);
    for (int j = 0; j < l; ++j) c[j] = norm(a.c[j] - b.c[j], pn);
    return GRElement{shared_from_this(), std::move(c)};
}

GRElement GaloisRing::neg(const GRElement& a) const {
    check(a);
    std::vector<i64> c(l);
    for (int j = 0; j < l; ++j) c[j] = norm(-a.c[j], pn);
    return GRElement{shared_from_this(), std::move(c)};
}

GRElement GaloisRing::mul(const GRElement& a, const GRElement& b) const {
    check(a);
    check(b);
    std::vector<i64> prod(2 * l - 1, 0);
    for (int i = 0; i < l; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < l; ++j)
            prod[i + j] = norm(prod[i + j] + a.c[i] * b.c[j], pn);
    }
    for (int d = 2 * l - 2; d >= l; --d) {
        i64 cd = prod[d];
        if (cd == 0) continue;
        prod[d] = 0;
        for (int j = 0; j < l; ++j)
            prod[d - l + j] = norm(prod[d - l + j] - cd * h[j], pn);
    }
    prod.resize(l);
    return GRElement{shared_from_this(), std::move(prod)};
}

GRElement GaloisRing::mul_int(const GRElement& a, std::int64_t k) const {
    check(a);
    std::vector<i64> c(l);
    i64 kk = norm(k, pn);
    for (int j = 0; j < l; ++j) c[j] = norm(a.c[j] * kk, pn);
    return GRElement{shared_from_this(), std::move(c)};
}

GRElement GaloisRing::pow(const GRElement& a, std::uint64_t e) const {
    check(a);
    GRElement r = one();
    GRElement base = a;
    while (e > 0) {
        if (e & 1u) r = mul(r, base);
        base = mul(base, base);
        e >>= 1u;
    }
    return r;
}

GRElement GaloisRing::inverse(const GRElement& a) const {
    check(a);
    if (!a.is_unit()) throw NotAUnit("inverse of a non-unit");
    // residue field inverse via x^(q-2), then Newton lifting
    RingPtr ff = residue_ring();
    GRElement abar = reduce_mod_p(a);
    GRElement binv_ff = ff->pow(abar, residue_size() - 2);
    GRElement b = lift_from_ff(binv_ff);
    for (int prec = 1; prec < n; prec *= 2) {
        // b <- b (2 - a b)
        GRElement t = sub(from_int(2), mul(a, b));
        b = mul(b, t);
    }
    assert(mul(a, b) == one());
    return b;
}

GRElement GaloisRing::reduce_mod_p(const GRElement& a) const {
    check(a);
    RingPtr ff = residue_ring();
    std::vector<i64> c(l);
    for (int j = 0; j < l; ++j) c[j] = norm(a.c[j], p);
    return GRElement{ff, std::move(c)};
}

GRElement GaloisRing::lift_from_ff(const GRElement& x) const {
    if (!x.ring || x.ring->p != p || x.ring->l != l || x.ring->n != 1)
        throw RingMismatch("lift_from_ff: incompatible element");
    std::vector<i64> c = x.c;
    for (auto& v : c) v = norm(v, p);  // representatives in [0, p)
    return GRElement{shared_from_this(), std::move(c)};
}

GRElement GaloisRing::div_by_p(const GRElement& a) const {
    check(a);
    std::vector<i64> c(l);
    for (int j = 0; j < l; ++j) {
        if (a.c[j] % p != 0)
            throw std::domain_error("div_by_p: coefficient not divisible");
        c[j] = a.c[j] / p;
    }
    return GRElement{shared_from_this(), std::move(c)};
}

GRElement GaloisRing::teichmuller(const GRElement& a) const {
    check(a);
    std::uint64_t q = residue_size();
    GRElement x = a;
    for (int i = 0; i < n + 1; ++i) {
        GRElement y = pow(x, q);
        if (y == x) return x;
        x = y;
    }
    assert(pow(x, q) == x);
    return x;
}

std::vector<GRElement> GaloisRing::teichmuller_set() const {
    RingPtr ff = residue_ring();
    std::vector<GRElement> out;
    out.reserve(residue_size());
    for (std::uint64_t i = 0; i < residue_size(); ++i) {
        GRElement xb = ff->element_from_index(i);
        out.push_back(teichmuller(lift_from_ff(xb)));
    }
    return out;
}

GRElement GaloisRing::teichmuller_generator() const {
    std::uint64_t q = residue_size();
    for (const GRElement& t : teichmuller_set()) {
        if (t.is_zero()) continue;
        // multiplicative order of t
        GRElement acc = t;
        std::uint64_t ord = 1;
        while (!(acc == one())) {
            acc = mul(acc, t);
            ++ord;
        }
        if (ord == q - 1) return t;
    }
    throw std::logic_error("no Teichmuller generator found");
}

// --- extensions -----------------------------------------------------------

namespace {

GRElement eval_poly(const RingPtr& ring, const std::vector<GRElement>& f,
                    const GRElement& x) {
    GRElement acc = ring->zero();
    for (std::size_t i = f.size(); i-- > 0;)
        acc = ring->add(ring->mul(acc, x), f[i]);
    return acc;
}

std::vector<GRElement> poly_derivative(const RingPtr& ring,
                                       const std::vector<GRElement>& f) {
    std::vector<GRElement> d;
    for (std::size_t i = 1; i < f.size(); ++i)
        d.push_back(ring->mul_int(f[i], i64(i)));
    return d;
}

}  // namespace

GRElement find_root(const RingPtr& ring,
                    const std::vector<GRElement>& monic_poly) {
    RingPtr ff = ring->residue_ring();
    std::vector<GRElement> fbar;
    for (const auto& c : monic_poly) fbar.push_back(ring->reduce_mod_p(c));
    std::vector<GRElement> fbar_d = poly_derivative(ff, fbar);
    for (std::uint64_t i = 0; i < ring->residue_size(); ++i) {
        GRElement xb = ff->element_from_index(i);
        if (!eval_poly(ff, fbar, xb).is_zero()) continue;
        if (eval_poly(ff, fbar_d, xb).is_zero()) continue;  // need simple root
        // Newton lift
        GRElement r = ring->lift_from_ff(xb);
        std::vector<GRElement> fd = poly_derivative(ring, monic_poly);
        for (int prec = 1; prec < ring->n; prec *= 2) {
            GRElement fr = eval_poly(ring, monic_poly, r);
            GRElement dr = eval_poly(ring, fd, r);
            r = ring->sub(r, ring->mul(fr, ring->inverse(dr)));
        }
        assert(eval_poly(ring, monic_poly, r).is_zero());
        return r;
    }
    throw std::domain_error("find_root: no simple root in residue field");
}

Extension gr_extend(RingPtr base, int m) {
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    RingPtr ext = GaloisRing::construct(base->p, base->n, base->l * m);
    std::vector<GRElement> h_in_ext;
    for (i64 c : base->h) h_in_ext.push_back(ext->from_int(c));
    GRElement img = find_root(ext, h_in_ext);
    return Extension{std::move(base), std::move(ext), m, std::move(img)};
}

GRElement Extension::embed(const GRElement& a) const {
    base->check(a);
    GRElement acc = ext->zero();
    GRElement power = ext->one();
    for (int j = 0; j < base->l; ++j) {
        acc = ext->add(acc, ext->mul_int(power, a.c[j]));
        power = ext->mul(power, base_gen_image);
    }
    return acc;
}

GRElement Extension::frobenius(const GRElement& x) const {
    ext->check(x);
    std::uint64_t qbase = base->residue_size();
    GRElement rest = x;
    GRElement acc = ext->zero();
    i64 pi = 1;
    for (int i = 0; i < ext->n; ++i) {
        GRElement digit = ext->teichmuller(rest);
        acc = ext->add(acc, ext->mul_int(ext->pow(digit, qbase), pi));
        rest = ext->sub(rest, digit);
        if (i + 1 < ext->n) rest = ext->div_by_p(rest);
        pi *= ext->p;
    }
    return acc;
}

GRElement Extension::trace(const GRElement& x) const {
    ext->check(x);
    GRElement acc = ext->zero();
    GRElement cur = x;
    for (int i = 0; i < m; ++i) {
        acc = ext->add(acc, cur);
        if (i + 1 < m) cur = frobenius(cur);
    }
    if (base->l == 1) {
        for (int j = 1; j < ext->l; ++j)
            if (acc.c[j] != 0)
                throw std::logic_error("trace did not land in the base ring");
        return base->element({acc.c[0]});
    }
    // express acc in the embedded base: solve for coordinates in powers of
    // the base generator image
    modlin::Mat A(ext->l, std::vector<i64>(base->l, 0));
    GRElement power = ext->one();
    for (int j = 0; j < base->l; ++j) {
        for (int i = 0; i < ext->l; ++i) A[i][j] = power.c[i];
        power = ext->mul(power, base_gen_image);
    }
    auto sol = modlin::solve(A, acc.c, ext->pn, ext->p);
    if (!sol) throw std::logic_error("trace did not land in the base ring");
    return base->element(*sol);
}

}  // namespace mvc
