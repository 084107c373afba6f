#include "mvchain/distance.hpp"

namespace mvc {

int hamming_weight(const MultiPoly& x) {
    int w = 0;
    for (const auto& c : x.c)
        if (!c.is_zero()) ++w;
    return w;
}

DistanceReport min_distance_exhaustive(const Code& code, std::uint64_t cap) {
    DistanceReport rep;
    rep.method = DistanceReport::Method::Exhaustive;
    CodewordIter it(code, cap);
    while (auto w = it.next()) {
        ++rep.codewords_scanned;
        if (w->is_zero()) continue;
        int wt = hamming_weight(*w);
        if (!rep.d || wt < *rep.d) {
            rep.d = wt;
            rep.witness = std::move(*w);
        }
    }
    return rep;
}

std::uint64_t QuotientCode::card() const {
    std::uint64_t q = amb->ring->size();
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) r *= q;
    return r;
}

QuotientCode quotient_code(const Code& code) {
    const Ambient& a = *code.dec->amb;
    QuotientCode qc;
    qc.amb = a.residue();
    const RingPtr& fq = qc.amb->ring;

    // all monomial shifts of the reduced H-family, row-reduced over F_q
    std::vector<MultiPoly> rows;
    for (const auto& h : code.h_family) {
        if (h.is_zero()) continue;
        MultiPoly hbar = a.reduce_mod_p(h, qc.amb);
        for (std::size_t idx = 0; idx < qc.amb->N; ++idx) {
            auto degs = qc.amb->degrees_of(idx);
            rows.push_back(qc.amb->mul(hbar, qc.amb->monomial(degs, fq->one())));
        }
    }
    std::size_t lead = 0;
    for (std::size_t col = 0; col < qc.amb->N && lead < rows.size(); ++col) {
        std::size_t piv = lead;
        while (piv < rows.size() && rows[piv].c[col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[lead], rows[piv]);
        rows[lead] = qc.amb->scale(fq->inverse(rows[lead].c[col]), rows[lead]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || rows[r].c[col].is_zero()) continue;
            rows[r] = qc.amb->sub(
                rows[r], qc.amb->scale(rows[r].c[col], rows[lead]));
        }
        ++lead;
    }
    rows.resize(lead);
    qc.basis = std::move(rows);
    return qc;
}

DistanceReport min_distance_via_quotient(const Code& code, std::uint64_t cap) {
    QuotientCode qc = quotient_code(code);
    DistanceReport rep;
    rep.method = DistanceReport::Method::Quotient;
    if (qc.card() > cap) throw CapExceeded("quotient code exceeds the cap");
    const Ambient& a = *qc.amb;
    std::uint64_t q = a.ring->size();
    std::vector<std::uint64_t> digits(qc.basis.size(), 0);
    MultiPoly cur = a.zero();
    for (;;) {
        ++rep.codewords_scanned;
        if (!cur.is_zero()) {
            int wt = hamming_weight(cur);
            if (!rep.d || wt < *rep.d) {
                rep.d = wt;
                rep.witness = cur;
            }
        }
        std::size_t d = 0;
        bool finished = false;
        for (;;) {
            if (d == digits.size()) {
                finished = true;
                break;
            }
            GRElement before = a.ring->element_from_index(digits[d]);
            digits[d] = (digits[d] + 1) % q;
            GRElement after = a.ring->element_from_index(digits[d]);
            cur = a.add(cur, a.scale(a.ring->sub(after, before), qc.basis[d]));
            if (digits[d] != 0) break;
            ++d;
        }
        if (finished) break;
    }
    return rep;
}

}  // namespace mvc
