#include "mvchain/codes.hpp"

#include <algorithm>

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

void check_params(const Decomposition& dec, const CodeParams& params) {
    if (params.ic.size() != dec.summands.size())
        throw std::invalid_argument("one (i, c) pair per summand required");
    int n = dec.amb->ring->n;
    for (std::size_t s = 0; s < params.ic.size(); ++s) {
        auto [i, c] = params.ic[s];
        int k = dec.summands[s].k;
        bool zero_comp = (i == n && c == 0);
        bool in_range = (i >= 0 && i < n && c >= 0 && c < k);
        if (!zero_comp && !in_range)
            throw std::invalid_argument("code parameters out of bounds");
    }
}

/// residue-field transversal: integer combinations of the residue basis
/// with coefficients in [0, p)
std::vector<MultiPoly> transversal(const Summand& s) {
    const Ambient& a = *s.amb();
    auto basis = s.residue_basis();
    std::int64_t p = a.ring->p;
    std::vector<MultiPoly> out;
    std::vector<std::int64_t> digits(basis.size(), 0);
    MultiPoly cur = a.zero();
    for (;;) {
        out.push_back(cur);
        std::size_t d = 0;
        while (d < digits.size()) {
            ++digits[d];
            cur = a.add(cur, basis[d]);
            if (digits[d] < p) break;
            cur = a.sub(cur, a.mul_int(basis[d], p));
            digits[d] = 0;
            ++d;
        }
        if (d == digits.size()) break;
    }
    return out;
}

}  // namespace

int params_level(const std::pair<int, int>& ic, int k) {
    return ic.first * k + ic.second;
}

std::pair<int, int> level_to_params(int level, int k, int n) {
    if (level == n * k) return {n, 0};
    return {level / k, level % k};
}

Code code_from_params(const DecompositionPtr& dec, const CodeParams& params) {
    check_params(*dec, params);
    const Ambient& a = *dec->amb;
    int n = a.ring->n;
    Code code;
    code.dec = dec;
    code.params = params;
    code.h_family.assign(std::size_t(n), a.zero());
    code.single_generator = a.zero();
    for (std::size_t s = 0; s < dec->summands.size(); ++s) {
        const Summand& sm = dec->summands[s];
        auto [i, c] = params.ic[s];
        int level = params_level(params.ic[s], sm.k);
        // staircase family: p^j H_{j+1} has level max(j k, level) in this
        // summand, so the j = n-1 slice carries the torsion code
        for (int j = 0; j < n; ++j) {
            int cj = std::max(0, level - j * sm.k);
            MultiPoly head = a.mul(a.pow(sm.uniformizer, unsigned(cj)), sm.e);
            code.h_family[std::size_t(j)] =
                a.add(code.h_family[std::size_t(j)], head);
        }
        if (i == n && c == 0) {
            code.summand_generators.push_back(a.zero());
            continue;
        }
        MultiPoly head = a.mul(a.pow(sm.uniformizer, unsigned(c)), sm.e);
        std::int64_t pi = 1;
        for (int w = 0; w < i; ++w) pi *= a.ring->p;
        MultiPoly gen = a.mul_int(head, pi);
        code.summand_generators.push_back(gen);
        code.single_generator = a.add(code.single_generator, gen);
    }
    return code;
}

CodeParams params_from_generators(const Decomposition& dec,
                                  const std::vector<MultiPoly>& gens) {
    CodeParams params;
    int n = dec.amb->ring->n;
    for (const Summand& s : dec.summands) {
        int lvl = s.nilpotency;
        for (const MultiPoly& g : gens) lvl = std::min(lvl, s.level_of(g));
        params.ic.push_back(level_to_params(lvl, s.k, n));
    }
    return params;
}

Code code_from_generators(const DecompositionPtr& dec,
                          const std::vector<MultiPoly>& gens) {
    return code_from_params(dec, params_from_generators(*dec, gens));
}

std::uint64_t cardinality(const Decomposition& dec, const CodeParams& params) {
    check_params(dec, params);
    int exp = 0;
    for (std::size_t s = 0; s < dec.summands.size(); ++s) {
        const Summand& sm = dec.summands[s];
        int lvl = params_level(params.ic[s], sm.k);
        exp += sm.delta * (sm.nilpotency - lvl);
    }
    return checked_pow(dec.amb->ring->residue_size(), exp);
}

std::uint64_t count_codes(const Decomposition& dec) {
    std::uint64_t total = 1;
    for (const Summand& s : dec.summands) {
        std::uint64_t levels = std::uint64_t(s.nilpotency) + 1;
        if (total > (std::uint64_t(1) << 62) / levels)
            throw std::overflow_error("code count exceeds 2^62");
        total *= levels;
    }
    return total;
}

std::vector<CodeParams> enumerate_codes(const Decomposition& dec,
                                        std::uint64_t cap) {
    std::uint64_t total = count_codes(dec);
    if (total > cap) throw CapExceeded("code enumeration exceeds the cap");
    int n = dec.amb->ring->n;
    std::vector<CodeParams> out;
    out.reserve(total);
    std::vector<int> levels(dec.summands.size(), 0);
    for (;;) {
        CodeParams params;
        for (std::size_t s = 0; s < levels.size(); ++s)
            params.ic.push_back(
                level_to_params(levels[s], dec.summands[s].k, n));
        out.push_back(std::move(params));
        std::size_t d = levels.size();
        while (d > 0) {
            --d;
            if (++levels[d] <= dec.summands[d].nilpotency) break;
            levels[d] = 0;
            if (d == 0) return out;
        }
    }
}

bool membership(const Code& code, const MultiPoly& x) {
    code.dec->amb->check(x);
    int n = code.dec->amb->ring->n;
    for (std::size_t s = 0; s < code.dec->summands.size(); ++s) {
        const Summand& sm = code.dec->summands[s];
        if (sm.level_of(x) < params_level(code.params.ic[s], sm.k))
            return false;
    }
    (void)n;
    return true;
}

CodewordIter::CodewordIter(const Code& code, std::uint64_t cap) : code_(code) {
    std::uint64_t size = cardinality(*code.dec, code.params);
    if (size > cap) throw CapExceeded("codeword enumeration exceeds the cap");
    total_ = size;
    const Ambient& a = *code.dec->amb;
    int n = a.ring->n;
    for (std::size_t s = 0; s < code.dec->summands.size(); ++s) {
        const Summand& sm = code.dec->summands[s];
        int lvl = params_level(code.params.ic[s], sm.k);
        if (lvl >= sm.nilpotency) continue;
        auto trans = transversal(sm);
        MultiPoly pi_m = a.pow(sm.uniformizer, unsigned(lvl));
        if (lvl == 0) pi_m = sm.e;
        for (int m = lvl; m < sm.nilpotency; ++m) {
            std::vector<MultiPoly> choices;
            choices.reserve(trans.size());
            for (const auto& tau : trans) choices.push_back(a.mul(tau, pi_m));
            terms_.push_back(std::move(choices));
            pi_m = a.mul(pi_m, sm.uniformizer);
        }
    }
    digits_.assign(terms_.size(), 0);
    (void)n;
}

std::optional<MultiPoly> CodewordIter::next() {
    if (done_) return std::nullopt;
    const Ambient& a = *code_.dec->amb;
    MultiPoly cur = a.zero();
    for (std::size_t d = 0; d < terms_.size(); ++d)
        cur = a.add(cur, terms_[d][digits_[d]]);
    std::size_t d = 0;
    for (;;) {
        if (d == digits_.size()) {
            done_ = true;
            break;
        }
        if (++digits_[d] < terms_[d].size()) break;
        digits_[d] = 0;
        ++d;
    }
    return cur;
}

KerdockCode generalized_kerdock(int m) {
    if (m < 2) throw std::invalid_argument("kerdock: m must be prime");
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) throw std::invalid_argument("kerdock: m must be prime");
    auto z4 = GaloisRing::construct(2, 2, 1);
    int len = (1 << m) - 1;
    std::vector<std::int64_t> t1(std::size_t(len) + 1, 0);
    t1[0] = 3;
    t1[std::size_t(len)] = 1;
    KerdockCode kc;
    kc.amb = Ambient::build(z4, {poly_from_ints(z4, t1),
                                 poly_from_ints(z4, {3, 0, 1})});
    kc.S = gr_extend(z4, m);
    kc.lambda = kc.S.ext->teichmuller_generator();
    return kc;
}

MultiPoly kerdock_codeword(const KerdockCode& kc, const GRElement& xi,
                           std::int64_t beta) {
    const Ambient& a = *kc.amb;
    const RingPtr& S = kc.S.ext;
    S->check(xi);
    int len = a.e[0];
    MultiPoly w = a.zero();
    GRElement lam_pow = S->one();
    for (int i1 = 0; i1 < len; ++i1) {
        GRElement tr = kc.S.trace(S->mul(xi, lam_pow));
        std::int64_t v = (tr.c[0] + beta) % 4;
        // eta = 3 generates the units 1 + 2 Z/4Z
        w.c[a.index_of({i1, 0})] = a.ring->from_int(v);
        w.c[a.index_of({i1, 1})] = a.ring->from_int(3 * v);
        lam_pow = S->mul(lam_pow, kc.lambda);
    }
    return w;
}

std::vector<MultiPoly> kerdock_generators(const KerdockCode& kc) {
    const RingPtr& S = kc.S.ext;
    std::vector<MultiPoly> gens;
    GRElement ypow = S->one();
    for (int j = 0; j < kc.S.m; ++j) {
        gens.push_back(kerdock_codeword(kc, ypow, 0));
        ypow = S->mul(ypow, S->gen());
    }
    gens.push_back(kerdock_codeword(kc, S->zero(), 1));
    return gens;
}

}  // namespace mvc
