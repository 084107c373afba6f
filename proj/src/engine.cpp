#include "mvchain/engine.hpp"

#include <sstream>

#include "json.hpp"
#include "mvchain/additive.hpp"
#include "mvchain/distance.hpp"

using nlohmann::json;

namespace mvc {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what)
        : std::runtime_error(what) {}
};

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

const json& field(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object())
        throw ValidationError(ctx + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw ValidationError(ctx + ": missing field '" + key + "'");
    return *it;
}

std::int64_t int_in(const json& j, std::int64_t lo, std::int64_t hi,
                    const std::string& ctx) {
    if (!j.is_number_integer())
        throw ValidationError(ctx + ": expected an integer");
    std::int64_t v = j.get<std::int64_t>();
    if (v < lo || v > hi)
        throw ValidationError(ctx + ": value " + std::to_string(v) +
                              " out of range [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    return v;
}

RingPtr parse_ring(const json& spec) {
    const json& r = field(spec, "ring", "spec");
    std::int64_t p = int_in(field(r, "p", "ring"), 2, 97, "ring.p");
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw ValidationError("ring.p: must be prime");
    int n = int(int_in(field(r, "n", "ring"), 1, 8, "ring.n"));
    int l = int(int_in(field(r, "l", "ring"), 1, 12, "ring.l"));
    return GaloisRing::construct(p, n, l);
}

std::vector<Poly> parse_polys(const json& spec, const RingPtr& ring) {
    const json& ps = field(spec, "polys", "spec");
    if (!ps.is_array() || ps.empty())
        throw ValidationError("polys: expected a non-empty array");
    std::vector<Poly> out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::string ctx = "polys[" + std::to_string(i) + "]";
        const json& pj = ps[i];
        if (!pj.is_array() || pj.size() < 2)
            throw ValidationError(ctx + ": expected an ascending coefficient "
                                        "array of degree >= 1");
        std::vector<std::int64_t> c;
        for (std::size_t d = 0; d < pj.size(); ++d)
            c.push_back(int_in(pj[d], 0, ring->pn - 1,
                               ctx + "[" + std::to_string(d) + "]"));
        if (c.back() != 1)
            throw ValidationError(ctx + ": leading coefficient must be 1");
        out.push_back(poly_from_ints(ring, c));
    }
    return out;
}

GRElement parse_coeff(const json& cj, const RingPtr& ring,
                      const std::string& ctx) {
    if (cj.is_number_integer())
        return ring->from_int(int_in(cj, 0, ring->pn - 1, ctx));
    if (!cj.is_array() || int(cj.size()) != ring->l)
        throw ValidationError(ctx + ": expected an integer or an array of " +
                              std::to_string(ring->l) + " integers");
    std::vector<std::int64_t> c;
    for (std::size_t i = 0; i < cj.size(); ++i)
        c.push_back(int_in(cj[i], 0, ring->pn - 1,
                           ctx + "[" + std::to_string(i) + "]"));
    return ring->element(std::move(c));
}

MultiPoly parse_tensor(const json& gj, const AmbientPtr& amb,
                       const std::string& ctx) {
    if (!gj.is_array())
        throw ValidationError(ctx + ": expected a coefficient tensor array");
    if (gj.size() != amb->N) {
        std::string shape;
        for (std::size_t v = 0; v < amb->e.size(); ++v)
            shape += (v ? " x " : "") + std::to_string(amb->e[v]);
        throw ValidationError(
            ctx + ": has " + std::to_string(gj.size()) +
            " entries but the ambient tensor has " + std::to_string(amb->N) +
            " (degrees " + shape + ")");
    }
    MultiPoly x = amb->zero();
    for (std::size_t i = 0; i < gj.size(); ++i)
        x.c[i] = parse_coeff(gj[i], amb->ring,
                             ctx + "[" + std::to_string(i) + "]");
    return x;
}

std::vector<MultiPoly> parse_generators(const json& spec,
                                        const AmbientPtr& amb) {
    const json& gs = field(spec, "generators", "spec");
    if (!gs.is_array())
        throw ValidationError("generators: expected an array");
    std::vector<MultiPoly> out;
    for (std::size_t i = 0; i < gs.size(); ++i)
        out.push_back(
            parse_tensor(gs[i], amb, "generators[" + std::to_string(i) + "]"));
    return out;
}

json coeff_json(const GRElement& a) {
    if (a.ring->l == 1) return a.c[0];
    return json(a.c);
}

json tensor_json(const MultiPoly& x) {
    json arr = json::array();
    for (const GRElement& a : x.c) arr.push_back(coeff_json(a));
    return arr;
}

json poly_json(const Poly& f) {
    json arr = json::array();
    for (const GRElement& a : f.c) arr.push_back(coeff_json(a));
    return arr;
}

std::uint64_t parse_cap(const json& spec, std::uint64_t dflt) {
    if (!spec.contains("cap")) return dflt;
    return std::uint64_t(
        int_in(spec.at("cap"), 1, std::int64_t(1) << 62, "cap"));
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// ---- commands -------------------------------------------------------------

const char* kind_name(AmbientKind k) {
    switch (k) {
        case AmbientKind::Semisimple: return "semisimple";
        case AmbientKind::ModularPIR: return "modular-pir";
        default: return "modular-non-pir";
    }
}

int cmd_check_pir(const json& spec, json& rep, std::ostringstream& text) {
    auto ring = parse_ring(spec);
    auto polys = parse_polys(spec, ring);
    auto cls = classify_ambient(ring, polys);
    rep["kind"] = kind_name(cls.kind);
    rep["is_pir"] = cls.pir.is_pir;
    rep["repeated_index"] =
        cls.repeated_index ? json(*cls.repeated_index) : json(nullptr);
    if (cls.pir.witness) {
        const PirWitness& w = *cls.pir.witness;
        json wj;
        wj["g"] = poly_json(w.g);
        wj["h"] = poly_json(w.h);
        wj["u"] = poly_json(w.u);
        wj["gcd_u_h"] =
            poly_json(ff_gcd(poly_reduce_mod_p(w.u), poly_reduce_mod_p(w.h)));
        wj["coprime"] = w.coprime;
        rep["witness"] = wj;
    } else {
        rep["witness"] = nullptr;
    }
    text << "kind: " << kind_name(cls.kind) << "\n"
         << "principal ideal ring: " << (cls.pir.is_pir ? "yes" : "no")
         << "\n";
    if (cls.repeated_index)
        text << "repeated-root polynomial: index " << *cls.repeated_index
             << "\n";
    return cls.pir.is_pir ? 0 : 1;
}

json summand_json(const Summand& s, bool idempotents) {
    json sj;
    sj["class_index"] = s.class_index;
    sj["class_size"] = s.class_size;
    sj["factor_index"] = s.factor_index;
    sj["g"] = poly_json(s.g);
    sj["deg_g"] = s.deg_g;
    sj["delta"] = s.delta;
    sj["k"] = s.k;
    sj["nilpotency"] = s.nilpotency;
    sj["residue_field_size"] = pow_u64(s.e.amb->ring->residue_size(), s.delta);
    sj["cardinality"] = s.card();
    if (idempotents) {
        sj["idempotent"] = tensor_json(s.e);
        sj["uniformizer"] = tensor_json(s.uniformizer);
    }
    return sj;
}

int cmd_decompose(const json& spec, json& rep, std::ostringstream& text) {
    auto ring = parse_ring(spec);
    auto polys = parse_polys(spec, ring);
    auto amb = Ambient::build(ring, polys);
    bool show = spec.value("show_idempotents", false);
    auto dec = decompose_ambient(amb);
    rep["kind"] = kind_name(classify_ambient(ring, polys).kind);
    rep["length"] = amb->N;
    json arr = json::array();
    std::uint64_t total = 1;
    for (const Summand& s : dec.summands) {
        arr.push_back(summand_json(s, show));
        total *= s.card();
    }
    rep["summands"] = arr;
    rep["ambient_size"] = total;
    text << "summands: " << dec.summands.size() << "\n";
    for (std::size_t i = 0; i < dec.summands.size(); ++i) {
        const Summand& s = dec.summands[i];
        text << "  [" << i << "] class " << s.class_index << " (size "
             << s.class_size << "), factor " << s.factor_index << ", deg g = "
             << s.deg_g << ", delta = " << s.delta << ", k = " << s.k
             << ", nilpotency = " << s.nilpotency << ", |summand| = "
             << s.card() << "\n";
    }
    return 0;
}

int cmd_enumerate(const json& spec, json& rep, std::ostringstream& text) {
    auto ring = parse_ring(spec);
    auto polys = parse_polys(spec, ring);
    auto dec = decompose_ambient(Ambient::build(ring, polys));
    std::uint64_t cap = parse_cap(spec, 1000000);
    auto all = enumerate_codes(dec, cap);
    rep["total"] = all.size();
    json rows = json::array();
    for (const CodeParams& p : all) {
        json row;
        row["params"] = p.ic;
        row["cardinality"] = cardinality(dec, p);
        rows.push_back(row);
    }
    rep["codes"] = rows;
    text << "codes: " << all.size() << "\n";
    for (const CodeParams& p : all) {
        text << "  (";
        for (std::size_t s = 0; s < p.ic.size(); ++s)
            text << (s ? ", " : "") << "[" << p.ic[s].first << ","
                 << p.ic[s].second << "]";
        text << ") |code| = " << cardinality(dec, p) << "\n";
    }
    return 0;
}

CodeParams parse_params(const json& spec, const Decomposition& dec) {
    const json& pj = field(spec, "params", "spec");
    if (!pj.is_array() || pj.size() != dec.summands.size())
        throw ValidationError("params: expected one [i, c] pair per summand (" +
                              std::to_string(dec.summands.size()) + ")");
    int n = dec.amb->ring->n;
    CodeParams params;
    for (std::size_t s = 0; s < pj.size(); ++s) {
        std::string ctx = "params[" + std::to_string(s) + "]";
        if (!pj[s].is_array() || pj[s].size() != 2)
            throw ValidationError(ctx + ": expected an [i, c] pair");
        int i = int(int_in(pj[s][0], 0, n, ctx + "[0]"));
        int c = int(int_in(pj[s][1], 0, dec.summands[s].k - 1, ctx + "[1]"));
        if (i == n && c != 0)
            throw ValidationError(ctx + ": i = n requires c = 0");
        params.ic.push_back({i, c});
    }
    return params;
}

json distance_json(const DistanceReport& r) {
    json dj;
    dj["method"] = r.method == DistanceReport::Method::Exhaustive
                       ? "exhaustive"
                       : "quotient";
    dj["d"] = r.d ? json(*r.d) : json(nullptr);
    dj["infinite"] = !r.d.has_value();
    dj["codewords_scanned"] = r.codewords_scanned;
    dj["witness"] = r.witness ? tensor_json(*r.witness) : json(nullptr);
    return dj;
}

int cmd_distance(const json& spec, json& rep, std::ostringstream& text) {
    auto ring = parse_ring(spec);
    auto polys = parse_polys(spec, ring);
    auto amb = Ambient::build(ring, polys);
    auto dec = std::make_shared<Decomposition>(decompose_ambient(amb));
    Code code = spec.contains("generators")
                    ? code_from_generators(dec, parse_generators(spec, amb))
                    : code_from_params(dec, parse_params(spec, *dec));
    std::string method = spec.value("method", "both");
    if (method != "exhaustive" && method != "quotient" && method != "both")
        throw ValidationError(
            "method: expected exhaustive, quotient, or both");
    std::uint64_t cap = parse_cap(spec, 1u << 24);
    rep["params"] = code.params.ic;
    rep["cardinality"] = cardinality(*dec, code.params);
    std::optional<int> d1, d2;
    if (method != "quotient") {
        auto r = min_distance_exhaustive(code, cap);
        rep["exhaustive"] = distance_json(r);
        d1 = r.d;
    }
    if (method != "exhaustive") {
        auto r = min_distance_via_quotient(code, cap);
        rep["quotient"] = distance_json(r);
        d2 = r.d;
    }
    if (method == "both") rep["methods_agree"] = (d1 == d2);
    std::optional<int> d = method == "quotient" ? d2 : d1;
    rep["d"] = d ? json(*d) : json(nullptr);
    text << "minimum distance: " << (d ? std::to_string(*d) : "infinite")
         << " (" << method << ")\n";
    if (method == "both")
        text << "methods agree: " << (d1 == d2 ? "yes" : "NO") << "\n";
    return 0;
}

int cmd_additive(const json& spec, json& rep, std::ostringstream& text) {
    auto ring = parse_ring(spec);
    if (ring->p != 2 || ring->n != 1 || ring->l != 1)
        throw ValidationError(
            "ring: additive jobs require the binary field {p: 2, n: 1, l: 1}");
    auto polys = parse_polys(spec, ring);
    auto aa = build_additive(polys);
    auto dec = decompose_additive(aa);
    std::string sub = spec.value("subcommand", "count");
    if (sub != "count" && sub != "rank" && sub != "quantum")
        throw ValidationError("subcommand: expected count, rank, or quantum");
    rep["subcommand"] = sub;
    rep["length"] = aa->length();
    json arr = json::array();
    for (const AdditiveSummand& s : dec->summands) {
        json sj;
        sj["delta"] = s.delta;
        sj["k"] = s.k;
        sj["class_size"] = s.class_size;
        sj["case"] = s.tag == AdditiveSummand::Case::OddDegree
                         ? "odd-degree"
                         : (s.tag == AdditiveSummand::Case::FactorSplits
                                ? "factor-splits"
                                : "class-splits");
        arr.push_back(sj);
    }
    rep["summands"] = arr;
    if (sub == "count") {
        rep["total"] = count_additive_codes(*dec);
        rep["single_generator"] = count_single_generator(*dec);
        text << "additive codes: " << count_additive_codes(*dec) << "\n"
             << "single-generator codes: " << count_single_generator(*dec)
             << "\n";
        return 0;
    }
    std::vector<MultiPoly> gens;
    if (spec.contains("generators")) gens = parse_generators(spec, aa->A4);
    auto code = additive_code(dec, gens);
    rep["cardinality"] = additive_card(code);
    if (sub == "rank") {
        rep["rank"] = generator_rank(code);
        text << "generator rank: " << generator_rank(code) << "\n";
        return 0;
    }
    auto qp = quantum_params(code, parse_cap(spec, 1u << 24));
    rep["quantum"] = {{"n", qp.n}, {"k", qp.k}, {"d", qp.d}};
    rep["dual_cardinality"] =
        (std::uint64_t(1) << (2 * aa->length())) / additive_card(code);
    text << "quantum parameters: [[" << qp.n << ", " << qp.k << ", " << qp.d
         << "]]\n";
    return 0;
}

}  // namespace

JobResult run_job(const std::string& spec_text) {
    JobResult out;
    json rep;
    std::ostringstream text;
    try {
        json spec = json::parse(spec_text);
        const json& cj = field(spec, "command", "spec");
        if (!cj.is_string())
            throw ValidationError("command: expected a string");
        std::string cmd = cj.get<std::string>();
        rep["schema"] = "mvc-report/1";
        rep["command"] = cmd;
        rep["spec_hash"] = hex64(fnv1a64(spec.dump()));
        int status;
        if (cmd == "check-pir")
            status = cmd_check_pir(spec, rep, text);
        else if (cmd == "decompose")
            status = cmd_decompose(spec, rep, text);
        else if (cmd == "enumerate")
            status = cmd_enumerate(spec, rep, text);
        else if (cmd == "distance")
            status = cmd_distance(spec, rep, text);
        else if (cmd == "additive")
            status = cmd_additive(spec, rep, text);
        else
            throw ValidationError("command: unknown command '" + cmd + "'");
        rep["status"] = status;
        out.status = status;
        out.report_json = rep.dump();
        out.report_text = text.str();
        if (status == 1) out.error = "negative verdict";
        return out;
    } catch (const json::parse_error& e) {
        out.status = 2;
        out.error = std::string("parse error: ") + e.what();
    } catch (const ValidationError& e) {
        out.status = 2;
        out.error = std::string("validation error: ") + e.what();
    } catch (const CapExceeded& e) {
        out.status = 3;
        out.error = std::string("cap exceeded: ") + e.what();
    } catch (const std::overflow_error& e) {
        out.status = 3;
        out.error = std::string("overflow: ") + e.what();
    } catch (const std::invalid_argument& e) {
        out.status = 1;
        out.error = e.what();
    } catch (const std::exception& e) {
        out.status = 2;
        out.error = e.what();
    }
    return out;
}

}  // namespace mvc
