#include "mvchain/ambient.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "modlin.hpp"

namespace mvc {

namespace {

std::uint64_t checked_pow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && r > (std::uint64_t(1) << 62) / b)
            throw std::overflow_error("cardinality exceeds 2^62");
        r *= b;
    }
    return r;
}

}  // namespace

bool MultiPoly::is_zero() const {
    for (const auto& a : c)
        if (!a.is_zero()) return false;
    return true;
}

AmbientPtr Ambient::build(RingPtr ring, std::vector<Poly> polys) {
    if (!ring) throw std::invalid_argument("ambient: null ring");
    if (polys.empty()) throw std::invalid_argument("ambient: no polynomials");
    for (const auto& f : polys) {
        if (!f.ring || !f.ring->same_ring(*ring))
            throw RingMismatch("ambient: polynomial over a different ring");
        if (!f.is_monic() || f.degree() < 1)
            throw std::invalid_argument("ambient: moduli must be monic of degree >= 1");
    }
    auto a = std::shared_ptr<Ambient>(new Ambient());
    a->ring = std::move(ring);
    a->t = std::move(polys);
    a->N = 1;
    for (const auto& f : a->t) {
        a->e.push_back(f.degree());
        a->stride.push_back(a->N);
        a->N *= std::size_t(f.degree());
    }
    // reduction rows: X_v^{e_v + d} mod t_v for d < e_v - 1
    a->fold.resize(a->t.size());
    for (std::size_t v = 0; v < a->t.size(); ++v) {
        int ev = a->e[v];
        std::vector<GRElement> cur(std::size_t(ev), a->ring->zero());
        for (int i = 0; i < ev; ++i) cur[std::size_t(i)] = a->ring->neg(a->t[v].coeff(std::size_t(i)));
        std::vector<GRElement> base = cur;  // X^{e_v} mod t_v
        for (int d = 0; d + 1 < ev; ++d) {
            a->fold[v].push_back(cur);
            std::vector<GRElement> nxt(std::size_t(ev), a->ring->zero());
            const GRElement& top = cur[std::size_t(ev - 1)];
            for (int i = 1; i < ev; ++i) nxt[std::size_t(i)] = cur[std::size_t(i - 1)];
            for (int i = 0; i < ev; ++i)
                nxt[std::size_t(i)] = a->ring->add(nxt[std::size_t(i)],
                                                   a->ring->mul(top, base[std::size_t(i)]));
            cur = std::move(nxt);
        }
    }
    return a;
}

void Ambient::check(const MultiPoly& x) const {
    if (!x.amb || x.amb.get() != this || x.c.size() != N)
        throw RingMismatch("ambient element mismatch");
}

MultiPoly Ambient::zero() const {
    return {shared_from_this(), std::vector<GRElement>(N, ring->zero())};
}

MultiPoly Ambient::one() const { return constant(ring->one()); }

MultiPoly Ambient::constant(const GRElement& a) const {
    ring->check(a);
    MultiPoly x = zero();
    x.c[0] = a;
    return x;
}

std::vector<int> Ambient::degrees_of(std::size_t idx) const {
    std::vector<int> d(t.size());
    for (std::size_t v = 0; v < t.size(); ++v) {
        d[v] = int(idx % std::size_t(e[v]));
        idx /= std::size_t(e[v]);
    }
    return d;
}

std::size_t Ambient::index_of(const std::vector<int>& degs) const {
    std::size_t idx = 0;
    for (std::size_t v = 0; v < t.size(); ++v) idx += std::size_t(degs[v]) * stride[v];
    return idx;
}

MultiPoly Ambient::from_univariate(int var, const Poly& f) const {
    if (var < 0 || var >= nvars()) throw std::invalid_argument("bad variable index");
    Poly r = poly_mod(f, t[std::size_t(var)]);
    MultiPoly x = zero();
    for (std::size_t i = 0; i < r.c.size(); ++i) x.c[i * stride[std::size_t(var)]] = r.c[i];
    return x;
}

MultiPoly Ambient::monomial(const std::vector<int>& degs, const GRElement& a) const {
    if (degs.size() != t.size()) throw std::invalid_argument("bad degree tuple");
    MultiPoly x = constant(a);
    for (std::size_t v = 0; v < t.size(); ++v) {
        if (degs[v] < 0) throw std::invalid_argument("negative degree");
        if (degs[v] == 0) continue;
        Poly xd = poly_mod(poly_pow(poly_gen(ring), unsigned(degs[v])), t[v]);
        x = mul(x, from_univariate(int(v), xd));
    }
    return x;
}

MultiPoly Ambient::add(const MultiPoly& a, const MultiPoly& b) const {
    check(a);
    check(b);
    MultiPoly r = a;
    for (std::size_t i = 0; i < N; ++i) r.c[i] = ring->add(r.c[i], b.c[i]);
    return r;
}

MultiPoly Ambient::sub(const MultiPoly& a, const MultiPoly& b) const {
    check(a);
    check(b);
    MultiPoly r = a;
    for (std::size_t i = 0; i < N; ++i) r.c[i] = ring->sub(r.c[i], b.c[i]);
    return r;
}

MultiPoly Ambient::neg(const MultiPoly& a) const {
    check(a);
    MultiPoly r = a;
    for (auto& x : r.c) x = ring->neg(x);
    return r;
}

MultiPoly Ambient::scale(const GRElement& s, const MultiPoly& a) const {
    check(a);
    MultiPoly r = a;
    for (auto& x : r.c) x = ring->mul(s, x);
    return r;
}

MultiPoly Ambient::mul_int(const MultiPoly& a, std::int64_t k) const {
    check(a);
    MultiPoly r = a;
    for (auto& x : r.c) x = ring->mul_int(x, k);
    return r;
}

MultiPoly Ambient::mul(const MultiPoly& a, const MultiPoly& b) const {
    check(a);
    check(b);
    const std::size_t r = t.size();
    std::vector<int> m(r);
    std::vector<std::size_t> xstride(r);
    std::size_t extN = 1;
    for (std::size_t v = 0; v < r; ++v) {
        m[v] = 2 * e[v] - 1;
        xstride[v] = extN;
        extN *= std::size_t(m[v]);
    }
    std::vector<GRElement> buf(extN, ring->zero());
    for (std::size_t ia = 0; ia < N; ++ia) {
        if (a.c[ia].is_zero()) continue;
        auto da = degrees_of(ia);
        for (std::size_t ib = 0; ib < N; ++ib) {
            if (b.c[ib].is_zero()) continue;
            auto db = degrees_of(ib);
            std::size_t idx = 0;
            for (std::size_t v = 0; v < r; ++v) idx += std::size_t(da[v] + db[v]) * xstride[v];
            buf[idx] = ring->add(buf[idx], ring->mul(a.c[ia], b.c[ib]));
        }
    }
    // fold each variable back under its modulus; reduction rows only feed
    // degrees < e_v, so one pass per variable suffices
    for (std::size_t v = 0; v < r; ++v) {
        for (std::size_t idx = 0; idx < extN; ++idx) {
            int dv = int((idx / xstride[v]) % std::size_t(m[v]));
            if (dv < e[v] || buf[idx].is_zero()) continue;
            GRElement coef = buf[idx];
            buf[idx] = ring->zero();
            std::size_t base = idx - std::size_t(dv) * xstride[v];
            const auto& row = fold[v][std::size_t(dv - e[v])];
            for (int tt = 0; tt < e[v]; ++tt) {
                std::size_t j = base + std::size_t(tt) * xstride[v];
                buf[j] = ring->add(buf[j], ring->mul(coef, row[std::size_t(tt)]));
            }
        }
    }
    MultiPoly out = zero();
    for (std::size_t i = 0; i < N; ++i) {
        auto d = degrees_of(i);
        std::size_t idx = 0;
        for (std::size_t v = 0; v < r; ++v) idx += std::size_t(d[v]) * xstride[v];
        out.c[i] = buf[idx];
    }
    return out;
}

MultiPoly Ambient::pow(const MultiPoly& a, unsigned ex) const {
    MultiPoly r = one();
    MultiPoly b = a;
    while (ex) {
        if (ex & 1u) r = mul(r, b);
        ex >>= 1u;
        if (ex) b = mul(b, b);
    }
    return r;
}

AmbientPtr Ambient::residue() const {
    std::vector<Poly> red;
    red.reserve(t.size());
    for (const auto& f : t) red.push_back(poly_reduce_mod_p(f));
    return build(ring->residue_ring(), std::move(red));
}

MultiPoly Ambient::reduce_mod_p(const MultiPoly& x, const AmbientPtr& res) const {
    check(x);
    if (res->N != N) throw RingMismatch("residue ambient shape mismatch");
    MultiPoly r = res->zero();
    for (std::size_t i = 0; i < N; ++i) r.c[i] = ring->reduce_mod_p(x.c[i]);
    return r;
}

MultiPoly Ambient::lift(const MultiPoly& x) const {
    if (x.c.size() != N) throw RingMismatch("residue ambient shape mismatch");
    MultiPoly r = zero();
    for (std::size_t i = 0; i < N; ++i) r.c[i] = ring->lift_from_ff(x.c[i]);
    return r;
}

Classification classify_ambient(const RingPtr& ring,
                                const std::vector<Poly>& polys) {
    Classification cls;
    cls.pir = pir_check(ring, polys);
    cls.repeated_index = cls.pir.repeated_index;
    if (!cls.repeated_index)
        cls.kind = AmbientKind::Semisimple;
    else
        cls.kind = cls.pir.is_pir ? AmbientKind::ModularPIR
                                  : AmbientKind::ModularNonPIR;
    return cls;
}

GRElement CycloClass::embed_base(const GRElement& a) const {
    Extension ext{a.ring, Q, Q->l / a.ring->l, base_gen};
    return ext.embed(a);
}

MultiPoly CycloClass::realize(const GRElement& x) const {
    Q->check(x);
    const Ambient& amb = *eps.amb;
    MultiPoly r = amb.zero();
    for (std::size_t i = 0; i < std::size_t(Q->l); ++i)
        r = amb.add(r, amb.mul_int(gen_pows[i], x.c[i]));
    return r;
}

namespace {

// realize a univariate polynomial over the stage ring at X_var
MultiPoly realize_poly_at(const CycloClass& st, const Poly& f, int var) {
    const Ambient& amb = *st.eps.amb;
    MultiPoly r = amb.zero();
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        std::vector<int> degs(std::size_t(amb.nvars()), 0);
        degs[std::size_t(var)] = int(i);
        r = amb.add(r, amb.mul(st.realize(f.c[i]),
                               amb.monomial(degs, amb.ring->one())));
    }
    return r;
}

}  // namespace

std::vector<CycloClass> semisimple_decompose(
    const AmbientPtr& amb, const std::vector<std::size_t>& vars) {
    const RingPtr& R = amb->ring;
    CycloClass root;
    root.Q = R;
    root.size = 1;
    root.base_gen = R->gen();
    root.eps = amb->one();
    root.gen_pows.clear();
    {
        GRElement acc = R->one();
        for (int i = 0; i < R->l; ++i) {
            root.gen_pows.push_back(amb->constant(acc));
            acc = R->mul(acc, R->gen());
        }
    }
    std::vector<CycloClass> stages{root};

    for (std::size_t v : vars) {
        if (!ff_is_square_free(poly_reduce_mod_p(amb->t[v])))
            throw std::invalid_argument(
                "semisimple_decompose: repeated root outside the distinguished variable");
        std::vector<CycloClass> next;
        for (const CycloClass& st : stages) {
            Extension extR{R, st.Q, st.Q->l / R->l, st.base_gen};
            Poly tQ = poly_embed(amb->t[v], extR);
            auto primaries = hensel_primary_decompose(tQ);
            std::vector<Poly> Gs;
            Gs.reserve(primaries.size());
            for (const auto& pf : primaries) {
                if (pf.k != 1)
                    throw std::logic_error("square-free polynomial lifted a repeated factor");
                Gs.push_back(pf.G);
            }
            auto idem = crt_idempotents(Gs, tQ);
            for (std::size_t w = 0; w < Gs.size(); ++w) {
                int d = Gs[w].degree();
                MultiPoly epsP = realize_poly_at(st, idem[w], int(v));
                CycloClass nc;
                if (d == 1) {
                    nc.Q = st.Q;
                    nc.base_gen = st.base_gen;
                    nc.eps = epsP;
                    nc.gen_pows.clear();
                    for (const auto& gp : st.gen_pows)
                        nc.gen_pows.push_back(amb->mul(gp, epsP));
                } else {
                    Extension eQ = gr_extend(st.Q, d);
                    const RingPtr& Qp = eQ.ext;
                    std::vector<GRElement> Gcoef;
                    for (std::size_t i = 0; i <= std::size_t(Gs[w].degree()); ++i)
                        Gcoef.push_back(eQ.embed(Gs[w].coeff(i)));
                    GRElement theta = find_root(Qp, Gcoef);
                    // coordinates of the canonical generator of Qp in the
                    // basis embed(y)^i * theta^j, i < l(Q), j < d
                    int L = st.Q->l, Lp = Qp->l;
                    modlin::Mat M(std::size_t(Lp), std::vector<modlin::i64>(std::size_t(Lp), 0));
                    GRElement ypow = Qp->one();
                    GRElement ybase = eQ.embed(st.Q->gen());
                    for (int i = 0; i < L; ++i) {
                        GRElement colv = ypow;
                        for (int j = 0; j < d; ++j) {
                            for (int rr = 0; rr < Lp; ++rr)
                                M[std::size_t(rr)][std::size_t(i * d + j)] = colv.c[std::size_t(rr)];
                            colv = Qp->mul(colv, theta);
                        }
                        ypow = Qp->mul(ypow, ybase);
                    }
                    std::vector<modlin::i64> b = Qp->gen().c;
                    auto sol = modlin::solve(M, b, R->pn, R->p);
                    if (!sol)
                        throw std::logic_error("generator pullback system is singular");
                    MultiPoly genimg = amb->zero();
                    for (int i = 0; i < L; ++i)
                        for (int j = 0; j < d; ++j) {
                            modlin::i64 cij = (*sol)[std::size_t(i * d + j)];
                            if (cij == 0) continue;
                            std::vector<int> degs(std::size_t(amb->nvars()), 0);
                            degs[v] = j;
                            MultiPoly term = amb->mul(st.gen_pows[std::size_t(i)],
                                                      amb->monomial(degs, amb->ring->one()));
                            genimg = amb->add(genimg, amb->mul_int(term, cij));
                        }
                    genimg = amb->mul(genimg, epsP);
                    nc.Q = Qp;
                    nc.base_gen = eQ.embed(st.base_gen);
                    nc.eps = epsP;
                    nc.gen_pows.clear();
                    nc.gen_pows.push_back(epsP);
                    for (int i = 1; i < Lp; ++i)
                        nc.gen_pows.push_back(amb->mul(nc.gen_pows.back(), genimg));
                }
                nc.size = nc.Q->l / R->l;
                next.push_back(std::move(nc));
            }
        }
        stages = std::move(next);
    }
    return stages;
}

MultiPoly Summand::realize(const GRElement& x) const {
    Q->check(x);
    const Ambient& a = *e.amb;
    MultiPoly r = a.zero();
    for (std::size_t i = 0; i < std::size_t(Q->l); ++i)
        r = a.add(r, a.mul_int(gen_pows[i], x.c[i]));
    return r;
}

std::uint64_t Summand::card() const {
    return checked_pow(Q->p, Q->l / class_size * size_exponent());
}

int Summand::level_of(const MultiPoly& x) const {
    const Ambient& a = *e.amb;
    MultiPoly y = a.mul(x, e);
    if (y.is_zero()) return nilpotency;
    int m = 0;
    while (!y.is_zero()) {
        y = a.mul(y, uniformizer);
        ++m;
    }
    return nilpotency - m;
}

std::vector<MultiPoly> Summand::module_basis() const {
    const Ambient& a = *e.amb;
    std::vector<MultiPoly> basis;
    for (int d = 0; d < k * deg_g; ++d) {
        std::vector<int> degs(std::size_t(a.nvars()), 0);
        degs[std::size_t(var)] = d;
        MultiPoly xd = a.monomial(degs, a.ring->one());
        for (int i = 0; i < Q->l; ++i)
            basis.push_back(a.mul(gen_pows[std::size_t(i)], xd));
    }
    return basis;
}

std::vector<MultiPoly> Summand::residue_basis() const {
    const Ambient& a = *e.amb;
    std::vector<MultiPoly> basis;
    for (int d = 0; d < deg_g; ++d) {
        std::vector<int> degs(std::size_t(a.nvars()), 0);
        degs[std::size_t(var)] = d;
        MultiPoly xd = a.monomial(degs, a.ring->one());
        for (int i = 0; i < Q->l; ++i)
            basis.push_back(a.mul(gen_pows[std::size_t(i)], xd));
    }
    return basis;
}

Decomposition decompose_ambient(const AmbientPtr& amb) {
    Classification cls = classify_ambient(amb->ring, amb->t);
    if (cls.kind == AmbientKind::ModularNonPIR)
        throw std::invalid_argument("decompose_ambient: not a principal ideal ring");
    Decomposition dec;
    dec.amb = amb;
    dec.special = cls.repeated_index.value_or(0);
    std::vector<std::size_t> others;
    for (std::size_t v = 0; v < std::size_t(amb->nvars()); ++v)
        if (v != dec.special) others.push_back(v);
    auto classes = semisimple_decompose(amb, others);
    const RingPtr& R = amb->ring;
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const CycloClass& C = classes[ci];
        Extension extR{R, C.Q, C.Q->l / R->l, C.base_gen};
        Poly tQ = poly_embed(amb->t[dec.special], extR);
        auto primaries = hensel_primary_decompose(tQ);
        std::vector<Poly> Gs;
        for (const auto& pf : primaries) Gs.push_back(pf.G);
        auto idem = crt_idempotents(Gs, tQ);
        for (std::size_t j = 0; j < primaries.size(); ++j) {
            Summand s;
            s.class_index = ci;
            s.factor_index = j;
            s.Q = C.Q;
            s.class_size = C.size;
            s.base_gen = C.base_gen;
            s.g = primaries[j].g;
            s.k = primaries[j].k;
            s.deg_g = primaries[j].r;
            s.delta = C.size * s.deg_g;
            s.nilpotency = R->n * s.k;
            s.var = int(dec.special);
            s.e = realize_poly_at(C, idem[j], s.var);
            s.gen_pows.clear();
            for (const auto& gp : C.gen_pows)
                s.gen_pows.push_back(amb->mul(gp, s.e));
            s.uniformizer = amb->mul(realize_poly_at(C, s.g, s.var), s.e);
            dec.summands.push_back(std::move(s));
        }
    }
    return dec;
}

ChainCertificate verify_chain_summand(const Decomposition& dec,
                                      std::size_t idx,
                                      std::uint64_t sample) {
    ChainCertificate cert;
    const Summand& s = dec.summands[idx];
    const Ambient& a = *dec.amb;
    std::ostringstream why;

    MultiPoly x = s.e;
    for (int m = 0; m < s.nilpotency - 1; ++m) x = a.mul(x, s.uniformizer);
    if (x.is_zero()) {
        cert.detail = "uniformizer nilpotent too early";
        return cert;
    }
    if (!a.mul(x, s.uniformizer).is_zero()) {
        cert.detail = "uniformizer^{n k} is nonzero";
        return cert;
    }

    auto basis = s.module_basis();
    std::uint64_t pn = std::uint64_t(a.ring->pn);
    std::uint64_t total = 1;
    bool exhaustive = true;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (total > (std::uint64_t(1) << 20) / pn) {
            exhaustive = false;
            break;
        }
        total *= pn;
    }
    std::uint64_t qd = checked_pow(a.ring->residue_size(), s.delta);

    if (exhaustive) {
        // histogram of chain levels over the whole summand
        std::vector<std::uint64_t> hist(std::size_t(s.nilpotency) + 1, 0);
        std::vector<std::int64_t> digits(basis.size(), 0);
        MultiPoly cur = a.zero();
        for (std::uint64_t it = 0;; ++it) {
            ++hist[std::size_t(s.level_of(cur))];
            ++cert.scanned;
            std::size_t d = 0;
            while (d < digits.size()) {
                ++digits[d];
                cur = a.add(cur, basis[d]);
                if (digits[d] < std::int64_t(pn)) break;
                // wrap: pn * basis[d] = 0 in the ambient already
                digits[d] = 0;
                ++d;
            }
            if (d == digits.size()) break;
        }
        for (int lvl = 0; lvl <= s.nilpotency; ++lvl) {
            std::uint64_t expect =
                lvl == s.nilpotency
                    ? 1
                    : (qd - 1) * checked_pow(qd, s.nilpotency - 1 - lvl);
            if (hist[std::size_t(lvl)] != expect) {
                why << "level " << lvl << " count " << hist[std::size_t(lvl)]
                    << " expected " << expect;
                cert.detail = why.str();
                return cert;
            }
        }
    } else {
        std::mt19937_64 rng(0x5ca1ab1eULL + idx);
        for (std::uint64_t it = 0; it < sample; ++it) {
            MultiPoly r = a.zero();
            for (const auto& b : basis)
                r = a.add(r, a.mul_int(b, std::int64_t(rng() % pn)));
            int lvl = s.level_of(r);
            ++cert.scanned;
            if (lvl < 0 || lvl > s.nilpotency) {
                cert.detail = "level out of range";
                return cert;
            }
            int lvl2 = s.level_of(a.mul(r, s.uniformizer));
            if (lvl2 != std::min(lvl + 1, s.nilpotency)) {
                cert.detail = "uniformizer does not shift levels by one";
                return cert;
            }
        }
    }
    cert.ok = true;
    return cert;
}

}  // namespace mvc
