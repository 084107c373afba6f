#include "mvchain/additive.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace mvc {

namespace {

constexpr std::uint64_t kEven = 0x5555555555555555ull;

bool is_f2(const RingPtr& r) { return r->p == 2 && r->n == 1 && r->l == 1; }

/// uniformizer^m localized to the summand; the 0th power is the idempotent.
MultiPoly upow(const Summand& sm, int m) {
    return m == 0 ? sm.e : sm.amb()->pow(sm.uniformizer, unsigned(m));
}

/// Residue transversal element of an A_2 summand by bit index: the subset sum
/// of the residue basis selected by the bits of idx.
MultiPoly transversal_element(const Summand& sm, std::uint64_t idx) {
    const Ambient& a = *sm.amb();
    MultiPoly out = a.zero();
    auto basis = sm.residue_basis();
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (idx >> j & 1) out = a.add(out, basis[j]);
    return out;
}

/// Reduced echelon basis of the F_2 row space; rows sorted by leading bit.
std::vector<std::uint64_t> rref(std::vector<std::uint64_t> rows) {
    std::vector<std::uint64_t> basis;
    for (std::uint64_t r : rows) {
        for (std::uint64_t b : basis) r = std::min(r, r ^ b);
        if (!r) continue;
        for (std::uint64_t& b : basis) b = std::min(b, b ^ r);
        basis.push_back(r);
    }
    std::sort(basis.begin(), basis.end(), std::greater<>());
    return basis;
}

std::uint64_t reduce_by(const std::vector<std::uint64_t>& basis,
                        std::uint64_t r) {
    for (std::uint64_t b : basis) r = std::min(r, r ^ b);
    return r;
}

/// All monomial shifts of x, as masks: an F_2 generating set of the
/// A_2-module A_2 * x.
std::vector<std::uint64_t> module_rows(const Ambient& a4, const MultiPoly& x) {
    std::vector<std::uint64_t> rows;
    rows.reserve(a4.N);
    for (std::size_t m = 0; m < a4.N; ++m)
        rows.push_back(mask_of(
            a4, a4.mul(a4.monomial(a4.degrees_of(m), a4.ring->one()), x)));
    return rows;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 r = (unsigned __int128)a * b;
    if (r > (std::uint64_t(1) << 62))
        throw std::overflow_error("code count exceeds 2^62");
    return std::uint64_t(r);
}

std::uint64_t summand_total(int delta, int k) {
    if (k * delta > 60) throw std::overflow_error("code count exceeds 2^62");
    std::uint64_t qd = std::uint64_t(1) << delta;
    std::uint64_t qkd = std::uint64_t(1) << (k * delta);
    std::uint64_t geo = (qkd - 1) / (qd - 1);
    std::uint64_t num = (qd + 1) * (geo - std::uint64_t(k) + qkd - 1);
    assert(num % (qd - 1) == 0);
    return 1 + std::uint64_t(k) + num / (qd - 1);
}

std::uint64_t summand_single(int delta, int k) {
    if (k * delta > 60) throw std::overflow_error("code count exceeds 2^62");
    std::uint64_t qd = std::uint64_t(1) << delta;
    std::uint64_t qkd = std::uint64_t(1) << (k * delta);
    return 1 + (qd + 1) * ((qkd - 1) / (qd - 1));
}

int mask_weight(std::uint64_t m) {
    return std::popcount((m | (m >> 1)) & kEven);
}

/// Null space basis of {v : parity(v & row) = 0 for all rows} over F_2.
std::vector<std::uint64_t> nullspace(const std::vector<std::uint64_t>& rows,
                                     int width) {
    std::vector<std::uint64_t> red;
    std::vector<int> pivot;
    for (std::uint64_t r : rows) {
        for (std::size_t i = 0; i < red.size(); ++i)
            if (r >> pivot[i] & 1) r ^= red[i];
        if (!r) continue;
        int pc = std::countr_zero(r);
        for (std::uint64_t& other : red)
            if (other >> pc & 1) other ^= r;
        red.push_back(r);
        pivot.push_back(pc);
    }
    std::vector<std::uint64_t> ns;
    for (int c = 0; c < width; ++c) {
        if (std::find(pivot.begin(), pivot.end(), c) != pivot.end()) continue;
        std::uint64_t v = std::uint64_t(1) << c;
        for (std::size_t i = 0; i < red.size(); ++i)
            if (red[i] >> c & 1) v |= std::uint64_t(1) << pivot[i];
        ns.push_back(v);
    }
    return ns;
}

}  // namespace

AdditiveAmbientPtr build_additive(const std::vector<Poly>& polys) {
    if (polys.empty()) throw std::invalid_argument("at least one polynomial");
    for (const Poly& t : polys) {
        if (!is_f2(t.ring))
            throw std::invalid_argument("additive ambient needs F_2 inputs");
        if (!t.is_monic() || t.degree() < 1)
            throw std::invalid_argument("moduli must be monic, degree >= 1");
    }
    auto f2 = polys[0].ring;
    auto cls = classify_ambient(f2, polys);
    if (cls.kind == AmbientKind::ModularNonPIR)
        throw std::invalid_argument(
            "at most one repeated-root polynomial allowed, the rest "
            "square-free");

    auto aa = std::make_shared<AdditiveAmbient>();
    aa->f2 = f2;
    aa->f4 = GaloisRing::construct(2, 1, 2);
    aa->polys = polys;
    aa->special = cls.repeated_index.value_or(0);
    aa->A2 = Ambient::build(f2, polys);
    std::vector<Poly> polys4;
    for (const Poly& t : polys) {
        std::vector<GRElement> c;
        for (const GRElement& a : t.c) c.push_back(aa->f4->from_int(a.c[0]));
        polys4.push_back(poly_make(aa->f4, std::move(c)));
    }
    aa->A4 = Ambient::build(aa->f4, std::move(polys4));
    if (aa->length() > 31)
        throw std::invalid_argument("additive length capped at 31");
    return aa;
}

MultiPoly embed_f4(const AdditiveAmbient& aa, const MultiPoly& x) {
    aa.A2->check(x);
    MultiPoly out = aa.A4->zero();
    for (std::size_t m = 0; m < aa.A4->N; ++m)
        out.c[m] = aa.f4->from_int(x.c[m].c[0]);
    return out;
}

std::vector<ClassSplit> split_classes(const AdditiveAmbient& aa) {
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < aa.polys.size(); ++i)
        if (i != aa.special) vars.push_back(i);
    auto classes = semisimple_decompose(aa.A2, vars);
    std::vector<ClassSplit> out;
    for (std::size_t i = 0; i < classes.size(); ++i)
        out.push_back({i, classes[i].size, classes[i].size % 2 == 0});
    return out;
}

AdditiveDecompositionPtr decompose_additive(const AdditiveAmbientPtr& aa) {
    auto dec = std::make_shared<AdditiveDecomposition>();
    dec->amb = aa;
    dec->dec2 =
        std::make_shared<Decomposition>(decompose_ambient(aa->A2));
    dec->dec4 =
        std::make_shared<Decomposition>(decompose_ambient(aa->A4));
    const Ambient& a4 = *aa->A4;
    std::vector<bool> claimed(dec->dec4->summands.size(), false);
    for (std::size_t s = 0; s < dec->dec2->summands.size(); ++s) {
        const Summand& s2 = dec->dec2->summands[s];
        AdditiveSummand as;
        as.a2_index = s;
        as.class_size = s2.class_size;
        as.delta = s2.delta;
        as.k = s2.k;
        as.e4 = embed_f4(*aa, s2.e);
        MultiPoly sum = a4.zero();
        for (std::size_t c = 0; c < dec->dec4->summands.size(); ++c) {
            const Summand& s4 = dec->dec4->summands[c];
            if (a4.mul(as.e4, s4.e) != s4.e) continue;
            as.children.push_back(c);
            sum = a4.add(sum, s4.e);
            assert(s4.k == as.k);
        }
        assert(sum == as.e4);
        if (as.children.size() == 1) {
            as.tag = AdditiveSummand::Case::OddDegree;
            as.b1 = as.e4;
            as.b2 = a4.scale(aa->f4->gen(), as.e4);
        } else {
            assert(as.children.size() == 2);
            as.tag = as.class_size % 2 == 1
                         ? AdditiveSummand::Case::FactorSplits
                         : AdditiveSummand::Case::ClassSplits;
            as.b1 = dec->dec4->summands[as.children[0]].e;
            as.b2 = dec->dec4->summands[as.children[1]].e;
        }
        for (std::size_t c : as.children) claimed[c] = true;
        dec->summands.push_back(std::move(as));
    }
    assert(std::all_of(claimed.begin(), claimed.end(),
                       [](bool b) { return b; }));
    return dec;
}

std::vector<SubmoduleDesc> enumerate_submodules(int delta, int k) {
    if (delta < 1 || delta > 20 || k < 1)
        throw std::invalid_argument("bad chain ring parameters");
    std::uint64_t q = std::uint64_t(1) << delta;
    std::vector<SubmoduleDesc> out;
    for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= k; ++b) {
            out.push_back({a, b, {}});  // f = 0; a = k means row 1 absent
            if (a == k) continue;
            for (int v = std::max(0, b - (k - a)); v <= b - 1; ++v) {
                int L = std::min(b - v, k - a);
                std::vector<std::uint64_t> mu(std::size_t(L), 0);
                mu[0] = 1;
                for (;;) {
                    SubmoduleDesc d{a, b,
                                    std::vector<std::uint64_t>(
                                        std::size_t(v + L), 0)};
                    for (int i = 0; i < L; ++i)
                        d.f[std::size_t(v + i)] = mu[std::size_t(i)];
                    out.push_back(std::move(d));
                    int i = 0;
                    while (i < L) {
                        if (++mu[std::size_t(i)] < q) break;
                        mu[std::size_t(i)] = (i == 0) ? 1 : 0;
                        ++i;
                    }
                    if (i == L) break;
                }
            }
        }
    return out;
}

int descriptor_rank(const SubmoduleDesc& d, int k) {
    bool r1 = d.a < k;
    bool r2 = d.b < k;
    if (!r1 && !r2) return 0;
    if (!r1 || !r2) return 1;
    for (std::size_t i = 0; i < d.f.size(); ++i)
        if (d.f[i]) {
            // the second row is the Z^{k-a} multiple of the first exactly
            // when val(f) + (k - a) = b
            return int(i) == d.b - (k - d.a) ? 1 : 2;
        }
    return 2;
}

std::uint64_t count_additive_codes(const AdditiveDecomposition& dec) {
    std::uint64_t total = 1;
    for (const AdditiveSummand& s : dec.summands)
        total = checked_mul(total, summand_total(s.delta, s.k));
    return total;
}

std::uint64_t count_single_generator(const AdditiveDecomposition& dec) {
    std::uint64_t total = 1;
    for (const AdditiveSummand& s : dec.summands)
        total = checked_mul(total, summand_single(s.delta, s.k));
    return total;
}

std::uint64_t mask_of(const Ambient& a4, const MultiPoly& x) {
    a4.check(x);
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < a4.N; ++i) {
        m |= std::uint64_t(x.c[i].c[0] & 1) << (2 * i);
        m |= std::uint64_t(x.c[i].c[1] & 1) << (2 * i + 1);
    }
    return m;
}

MultiPoly poly_from_mask(const AmbientPtr& a4, std::uint64_t mask) {
    MultiPoly x = a4->zero();
    for (std::size_t i = 0; i < a4->N; ++i)
        x.c[i] = a4->ring->element({std::int64_t(mask >> (2 * i) & 1),
                                    std::int64_t(mask >> (2 * i + 1) & 1)});
    return x;
}

AdditiveCode additive_code(const AdditiveDecompositionPtr& dec,
                           const std::vector<MultiPoly>& gens) {
    const Ambient& a4 = *dec->amb->A4;
    AdditiveCode code;
    code.dec = dec;
    code.generators = gens;
    std::vector<std::uint64_t> rows;
    for (const MultiPoly& g : gens) {
        auto shifts = module_rows(a4, g);
        rows.insert(rows.end(), shifts.begin(), shifts.end());
    }
    code.basis = rref(std::move(rows));
    return code;
}

AdditiveCode code_from_descriptors(const AdditiveDecompositionPtr& dec,
                                   const std::vector<SubmoduleDesc>& descs) {
    if (descs.size() != dec->summands.size())
        throw std::invalid_argument("one descriptor per summand required");
    const AdditiveAmbient& aa = *dec->amb;
    const Ambient& a2 = *aa.A2;
    const Ambient& a4 = *aa.A4;
    MultiPoly g1 = a4.zero();
    MultiPoly g2 = a4.zero();
    for (std::size_t s = 0; s < descs.size(); ++s) {
        const AdditiveSummand& as = dec->summands[s];
        const Summand& s2 = dec->dec2->summands[as.a2_index];
        const SubmoduleDesc& d = descs[s];
        if (d.a < 0 || d.a > as.k || d.b < 0 || d.b > as.k ||
            int(d.f.size()) > d.b)
            throw std::invalid_argument("descriptor out of range");
        if (d.a < as.k) {
            MultiPoly row = a4.mul(as.b1, embed_f4(aa, upow(s2, d.a)));
            MultiPoly f = a2.zero();
            for (std::size_t i = 0; i < d.f.size(); ++i)
                f = a2.add(f, a2.mul(transversal_element(s2, d.f[i]),
                                     upow(s2, int(i))));
            row = a4.add(row, a4.mul(as.b2, embed_f4(aa, f)));
            g1 = a4.add(g1, row);
        }
        if (d.b < as.k)
            g2 = a4.add(g2, a4.mul(as.b2, embed_f4(aa, upow(s2, d.b))));
    }
    std::vector<MultiPoly> gens;
    if (!g1.is_zero()) gens.push_back(g1);
    if (!g2.is_zero()) gens.push_back(g2);
    return additive_code(dec, gens);
}

std::uint64_t additive_card(const AdditiveCode& code) {
    return std::uint64_t(1) << code.basis.size();
}

bool additive_membership(const AdditiveCode& code, const MultiPoly& x) {
    return reduce_by(code.basis, mask_of(*code.dec->amb->A4, x)) == 0;
}

int generator_rank(const AdditiveCode& code) {
    const AdditiveAmbient& aa = *code.dec->amb;
    const Ambient& a4 = *aa.A4;
    int rank = 0;
    for (const AdditiveSummand& as : code.dec->summands) {
        const Summand& s2 = code.dec->dec2->summands[as.a2_index];
        MultiPoly z = embed_f4(aa, s2.uniformizer);
        std::vector<std::uint64_t> comp;
        std::vector<std::uint64_t> zcomp;
        for (std::uint64_t m : code.basis) {
            MultiPoly x = a4.mul(poly_from_mask(aa.A4, m), as.e4);
            comp.push_back(mask_of(a4, x));
            zcomp.push_back(mask_of(a4, a4.mul(x, z)));
        }
        int top = int(rref(comp).size()) - int(rref(zcomp).size());
        assert(top % as.delta == 0);
        rank = std::max(rank, top / as.delta);
    }
    return rank;
}

int trace_pairing(std::uint64_t u, std::uint64_t v) {
    // per position, Tr(u v^2) = u0 v1 + u1 v0 with z = z0 + z1 w
    std::uint64_t x = (u & (v >> 1) & kEven) ^ ((u >> 1) & v & kEven);
    return std::popcount(x) & 1;
}

AdditiveCode trace_dual(const AdditiveCode& code) {
    const AmbientPtr& a4 = code.dec->amb->A4;
    int width = int(2 * a4->N);
    std::vector<std::uint64_t> constraints;
    for (std::uint64_t d : code.basis) {
        std::uint64_t row = 0;
        for (int j = 0; j < width; ++j)
            if (trace_pairing(std::uint64_t(1) << j, d))
                row |= std::uint64_t(1) << j;
        constraints.push_back(row);
    }
    std::vector<MultiPoly> gens;
    for (std::uint64_t v : nullspace(constraints, width))
        gens.push_back(poly_from_mask(a4, v));
    AdditiveCode dual = additive_code(code.dec, gens);
    // the dual of a module is a module, so closure cannot grow it
    assert(dual.basis.size() + code.basis.size() == 2 * a4->N);
    return dual;
}

QuantumParams quantum_params(const AdditiveCode& code, std::uint64_t cap) {
    AdditiveCode dual = trace_dual(code);
    for (std::uint64_t d : code.basis)
        if (reduce_by(dual.basis, d) != 0)
            throw std::invalid_argument("code is not trace self-orthogonal");
    QuantumParams qp;
    qp.n = int(code.dec->amb->length());
    qp.k = qp.n - int(code.basis.size());
    std::size_t dim = dual.basis.size();
    if (dim >= 63 || (std::uint64_t(1) << dim) > cap)
        throw CapExceeded("dual enumeration exceeds the cap");
    bool self_dual = dim == code.basis.size();
    int best = 2 * qp.n + 1;
    for (std::uint64_t idx = 1; idx < (std::uint64_t(1) << dim); ++idx) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < dim; ++j)
            if (idx >> j & 1) v ^= dual.basis[j];
        if (!self_dual && reduce_by(code.basis, v) == 0) continue;
        best = std::min(best, mask_weight(v));
    }
    qp.d = best;
    return qp;
}

}  // namespace mvc
