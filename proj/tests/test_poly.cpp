#include "mvchain/poly.hpp"

#include <random>
#include <set>

#include "doctest.h"

using namespace mvc;

namespace {

Poly random_poly(const RingPtr& ring, int maxdeg, std::mt19937_64& rng,
                 bool monic = false) {
    int deg = int(rng() % (maxdeg + 1));
    std::vector<GRElement> c;
    for (int i = 0; i < deg; ++i)
        c.push_back(ring->element_from_index(rng() % ring->size()));
    c.push_back(monic ? ring->one()
                      : ring->element_from_index(rng() % ring->size()));
    return poly_make(ring, std::move(c));
}

Poly random_monic(const RingPtr& ring, int deg, std::mt19937_64& rng) {
    std::vector<GRElement> c;
    for (int i = 0; i < deg; ++i)
        c.push_back(ring->element_from_index(rng() % ring->size()));
    c.push_back(ring->one());
    return poly_make(ring, std::move(c));
}

}  // namespace

TEST_CASE("ff_gcd basics") {
    auto f2 = GaloisRing::construct(2, 1, 1);
    Poly a = poly_from_ints(f2, {1, 0, 1});  // x^2+1 = (x+1)^2
    Poly b = poly_from_ints(f2, {1, 1});
    CHECK(ff_gcd(a, b) == b);
    CHECK(ff_gcd(a, poly_zero(f2)) == a);

    std::mt19937_64 rng(17);
    for (auto field : {GaloisRing::construct(2, 1, 1),
                       GaloisRing::construct(2, 1, 2)}) {
        for (int i = 0; i < 100; ++i) {
            Poly f = random_poly(field, 4, rng);
            Poly g = random_poly(field, 4, rng);
            Poly d = random_poly(field, 3, rng);
            if (d.is_zero() || (f.is_zero() && g.is_zero())) continue;
            Poly gg = ff_gcd(poly_mul(f, d), poly_mul(g, d));
            CHECK(poly_mod(gg, poly_monic(d)).is_zero());
        }
    }
}

TEST_CASE("square_free_part") {
    auto f2 = GaloisRing::construct(2, 1, 1);
    CHECK(square_free_part(poly_from_ints(f2, {1, 0, 1})) ==
          poly_from_ints(f2, {1, 1}));
    Poly x7m1 = poly_from_ints(f2, {1, 0, 0, 0, 0, 0, 0, 1});  // x^7+1 = x^7-1
    CHECK(square_free_part(x7m1) == x7m1);
    CHECK(square_free_part(poly_from_ints(f2, {0, 0, 0, 0, 1})) ==
          poly_gen(f2));
}

TEST_CASE("ff_factor") {
    auto f2 = GaloisRing::construct(2, 1, 1);
    Poly x7m1 = poly_from_ints(f2, {1, 0, 0, 0, 0, 0, 0, 1});
    auto fac = ff_factor(x7m1);
    REQUIRE(fac.size() == 3);
    CHECK(fac[0].first == poly_from_ints(f2, {1, 1}));
    CHECK(fac[0].second == 1);
    std::set<Poly> cubics{fac[1].first, fac[2].first};
    CHECK(cubics.count(poly_from_ints(f2, {1, 1, 0, 1})) == 1);
    CHECK(cubics.count(poly_from_ints(f2, {1, 0, 1, 1})) == 1);

    auto fac2 = ff_factor(poly_from_ints(f2, {1, 0, 1}));
    REQUIRE(fac2.size() == 1);
    CHECK(fac2[0].first == poly_from_ints(f2, {1, 1}));
    CHECK(fac2[0].second == 2);

    auto f4 = GaloisRing::construct(2, 1, 2);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20; ++i) {
        Poly f = random_monic(f4, 1 + int(rng() % 8), rng);
        Poly prod = poly_one(f4);
        for (const auto& [g, k] : ff_factor(f)) {
            prod = poly_mul(prod, poly_pow(g, unsigned(k)));
            // irreducibility cross-check by trial division
            for (int d = 1; 2 * d <= g.degree(); ++d)
                for (const Poly& cand : ff_irreducibles(f4, d))
                    CHECK(!poly_mod(g, cand).is_zero());
        }
        CHECK(prod == f);
    }
    // canonical: refactoring the factors is stable
    auto refac = ff_factor(poly_mul(fac[1].first, fac[2].first));
    CHECK(refac.size() == 2);
    CHECK(refac[0].first == fac[1].first);
}

TEST_CASE("poly_divrem") {
    auto z4 = GaloisRing::construct(2, 2, 1);
    Poly f = poly_from_ints(z4, {0, 0, 1});
    Poly d = poly_from_ints(z4, {1, 0, 1});
    auto [q, r] = poly_divrem(f, d);
    CHECK(q == poly_one(z4));
    CHECK(r == poly_from_ints(z4, {3}));

    auto [q1, r1] = poly_divrem(f, poly_one(z4));
    CHECK(q1 == f);
    CHECK(r1.is_zero());

    auto gr42 = GaloisRing::construct(2, 2, 2);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        Poly a = random_poly(gr42, 6, rng);
        Poly dd = random_monic(gr42, 1 + int(rng() % 4), rng);
        auto [qq, rr] = poly_divrem(a, dd);
        CHECK(poly_add(poly_mul(qq, dd), rr) == a);
        CHECK(rr.degree() < dd.degree());
    }
    CHECK_THROWS(poly_divrem(f, poly_from_ints(z4, {1, 2})));
}

TEST_CASE("hensel_primary_decompose") {
    auto z4 = GaloisRing::construct(2, 2, 1);

    SUBCASE("X^2+1 over Z/4Z") {
        Poly t = poly_from_ints(z4, {1, 0, 1});
        auto fac = hensel_primary_decompose(t);
        REQUIRE(fac.size() == 1);
        CHECK(fac[0].G == t);
        CHECK(fac[0].g == poly_from_ints(z4, {1, 1}));
        CHECK(fac[0].k == 2);
        CHECK(fac[0].r == 1);
        // G - g^2 = -2X = 2X, so u = X
        CHECK(fac[0].u == poly_gen(z4));
    }

    SUBCASE("X^7-1 over Z/4Z matches the basic irreducible lifts") {
        Poly t = poly_from_ints(z4, {3, 0, 0, 0, 0, 0, 0, 1});
        auto fac = hensel_primary_decompose(t);
        REQUIRE(fac.size() == 3);
        std::set<Poly> Gs;
        Poly prod = poly_one(z4);
        for (const auto& pf : fac) {
            Gs.insert(pf.G);
            prod = poly_mul(prod, pf.G);
            CHECK(pf.k == 1);
            CHECK(pf.u == poly_div_by_p(poly_sub(pf.G, pf.g)));
        }
        CHECK(prod == t);
        CHECK(Gs.count(poly_from_ints(z4, {3, 1})) == 1);           // X-1
        CHECK(Gs.count(poly_from_ints(z4, {3, 1, 2, 1})) == 1);     // X^3+2X^2+X+3
        CHECK(Gs.count(poly_from_ints(z4, {3, 2, 3, 1})) == 1);     // X^3+3X^2+2X+3
    }

    SUBCASE("exact product certificate on random inputs") {
        std::mt19937_64 rng(41);
        for (auto ring : {GaloisRing::construct(2, 2, 1),
                          GaloisRing::construct(2, 2, 2),
                          GaloisRing::construct(3, 2, 1)}) {
            for (int i = 0; i < 25; ++i) {
                Poly t = random_monic(ring, 2 + int(rng() % 7), rng);
                auto fac = hensel_primary_decompose(t);
                Poly prod = poly_one(ring);
                for (const auto& pf : fac) {
                    prod = poly_mul(prod, pf.G);
                    CHECK(poly_reduce_mod_p(pf.G) ==
                          poly_pow(poly_reduce_mod_p(pf.g), unsigned(pf.k)));
                    CHECK(pf.u.degree() < pf.r * pf.k);
                }
                CHECK(prod == t);
            }
        }
    }
}

TEST_CASE("crt_idempotents") {
    auto z4 = GaloisRing::construct(2, 2, 1);
    Poly t = poly_from_ints(z4, {3, 0, 0, 0, 0, 0, 0, 1});  // X^7-1

    SUBCASE("single factor") {
        auto e = crt_idempotents({t}, t);
        REQUIRE(e.size() == 1);
        CHECK(e[0] == poly_one(z4));
    }

    SUBCASE("the three factors of X^7-1") {
        auto fac = hensel_primary_decompose(t);
        std::vector<Poly> Gs;
        for (const auto& pf : fac) Gs.push_back(pf.G);
        auto es = crt_idempotents(Gs, t);
        Poly sum = poly_zero(z4);
        for (std::size_t i = 0; i < es.size(); ++i) {
            CHECK(poly_mod(poly_mul(es[i], es[i]), t) == es[i]);
            for (std::size_t j = i + 1; j < es.size(); ++j)
                CHECK(poly_mod(poly_mul(es[i], es[j]), t).is_zero());
            sum = poly_add(sum, es[i]);
        }
        CHECK(sum == poly_one(z4));

        // X^4+X^3-3X^2+2X+3 acts as a unit multiple of the idempotent of
        // the third summand (factor X^3+3X^2+2X+3): its component there is
        // invertible, its component at X-1 vanishes, and the remaining
        // component is 2-torsion.
        Poly cand = poly_from_ints(z4, {3, 2, 1, 1, 1});
        std::size_t third = SIZE_MAX, first = SIZE_MAX, second = SIZE_MAX;
        for (std::size_t j = 0; j < Gs.size(); ++j) {
            if (Gs[j] == poly_from_ints(z4, {3, 2, 3, 1})) third = j;
            if (Gs[j] == poly_from_ints(z4, {3, 1, 2, 1})) second = j;
            if (Gs[j] == poly_from_ints(z4, {3, 1})) first = j;
        }
        REQUIRE(third != SIZE_MAX);
        CHECK(poly_mod(poly_mul(cand, es[first]), t).is_zero());
        // unit component: x^{|units of GR(4,3)|} returns to the idempotent
        Poly x = poly_mod(poly_mul(cand, es[third]), t);
        Poly acc = es[third];  // unit group of GR(4,3) has order 56
        for (int i = 0; i < 56; ++i) acc = poly_mod(poly_mul(acc, x), t);
        CHECK(acc == es[third]);
        Poly mid = poly_mod(poly_mul(cand, es[second]), t);
        CHECK(!mid.is_zero());
        CHECK(poly_scale(z4->from_int(2), mid).is_zero());
    }

    SUBCASE("random square-free moduli over Z/8Z") {
        auto z8 = GaloisRing::construct(2, 3, 1);
        std::mt19937_64 rng(53);
        int done = 0;
        while (done < 20) {
            Poly t8 = random_monic(z8, 2 + int(rng() % 5), rng);
            if (!ff_is_square_free(poly_reduce_mod_p(t8))) continue;
            auto fac = hensel_primary_decompose(t8);
            if (fac.size() < 2) continue;
            ++done;
            std::vector<Poly> Gs;
            for (const auto& pf : fac) Gs.push_back(pf.G);
            auto es = crt_idempotents(Gs, t8);
            Poly sum = poly_zero(z8);
            for (std::size_t i = 0; i < es.size(); ++i) {
                sum = poly_add(sum, es[i]);
                for (std::size_t j = i + 1; j < es.size(); ++j)
                    CHECK(poly_mod(poly_mul(es[i], es[j]), t8).is_zero());
            }
            CHECK(sum == poly_one(z8));
        }
    }
}

TEST_CASE("pir_check") {
    auto z4 = GaloisRing::construct(2, 2, 1);
    Poly t1 = poly_from_ints(z4, {1, 0, 1});                    // X1^2+1
    Poly t2 = poly_from_ints(z4, {3, 0, 0, 0, 0, 0, 0, 1});     // X2^7-1

    auto rep = pir_check(z4, {t1, t2});
    CHECK(rep.is_pir);
    REQUIRE(rep.repeated_index.has_value());
    CHECK(*rep.repeated_index == 0);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->coprime);
    // t = g h + 2 u exactly
    Poly rhs = poly_add(poly_mul(rep.witness->g, rep.witness->h),
                        poly_scale(z4->from_int(2), rep.witness->u));
    CHECK(rhs == t1);

    auto rep2 = pir_check(z4, {poly_from_ints(z4, {3, 0, 0, 0, 1})});  // X^4-1
    CHECK(!rep2.is_pir);

    auto rep3 = pir_check(z4, {poly_from_ints(z4, {3, 0, 1})});  // X^2-1
    CHECK(!rep3.is_pir);

    CHECK_THROWS(pir_check(z4, {poly_from_ints(z4, {1, 2})}));
}

TEST_CASE("pir verdict is invariant under lift perturbation") {
    std::mt19937_64 rng(61);
    for (auto ring : {GaloisRing::construct(2, 2, 1),
                      GaloisRing::construct(3, 2, 1)}) {
        for (int trial = 0; trial < 15; ++trial) {
            Poly t = random_monic(ring, 2 + int(rng() % 5), rng);
            if (ff_is_square_free(poly_reduce_mod_p(t))) continue;
            auto base = pir_check(ring, {t});
            auto fac = hensel_primary_decompose(t);
            for (int pert = 0; pert < 20; ++pert) {
                // replace each g_j by g_j + p*w and recompute h, u, verdict
                Poly g = poly_one(ring), h = poly_one(ring);
                for (const auto& pf : fac) {
                    Poly w = random_poly(ring, std::max(0, pf.r - 1), rng);
                    Poly gj = poly_add(pf.g, poly_scale(
                        ring->from_int(ring->p), w));
                    g = poly_mul(g, gj);
                    h = poly_mul(h, poly_pow(gj, unsigned(pf.k - 1)));
                }
                Poly u = poly_div_by_p(poly_sub(t, poly_mul(g, h)));
                Poly ubar = poly_reduce_mod_p(u);
                Poly hbar = poly_reduce_mod_p(h);
                bool verdict =
                    !ubar.is_zero() && ff_gcd(ubar, hbar).degree() == 0;
                CHECK(verdict == base.is_pir);
            }
        }
    }
}
