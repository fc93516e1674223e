#include "doctest.h"

#include "qtsieve/characters.hpp"
#include "support/laurent_oracle.hpp"

using namespace qtsieve;
using qtsieve::testsupport::laurent_additive_char;

namespace {
Poly P(const FieldPtr& F, std::vector<int> asc) { return Poly(F, std::move(asc)); }
}

TEST_CASE("char_E basics") {
    auto F2 = FieldSpec::make(2, 1);
    CHECK(char_E(F2, 0) == CycValue::integer(1));
    CHECK(char_E(F2, 1) == CycValue::integer(-1));
    auto F4 = FieldSpec::make(2, 2);
    CHECK(char_E(F4, F4->from_coords({0, 1})) == CycValue::integer(-1));  // Tr(u) = 1
    // homomorphism from (F_q, +)
    for (int q : {4, 9}) {
        auto F = FieldSpec::make_q(q);
        for (int x = 0; x < q; ++x)
            for (int y = 0; y < q; ++y)
                REQUIRE(char_E(F, F->add(x, y)) == char_E(F, x) * char_E(F, y));
    }
}

TEST_CASE("additive_char pinned examples") {
    auto F2 = FieldSpec::make(2, 1);
    auto F3 = FieldSpec::make(3, 1);
    Poly one2 = Poly::one(F2), t2 = Poly::t(F2);
    // f | g*r gives 1
    CHECK(additive_char(t2, one2, t2) == CycValue::integer(1));
    // q=2: e(1/t) = -1
    CHECK(additive_char(one2, one2, t2) == CycValue::integer(-1));
    // q=3: e(1/t^2) = 1
    Poly t3sq = P(F3, {0, 0, 1});
    CHECK(additive_char(Poly::one(F3), Poly::one(F3), t3sq) == CycValue::integer(1));
    CHECK_THROWS_AS(additive_char(one2, one2, Poly::zero(F2)), std::domain_error);
    CHECK_THROWS_AS(additive_char(one2, one2, Poly(F3, {1, 2})), std::domain_error);  // non-monic
}

TEST_CASE("additive_char agrees with the Laurent oracle exhaustively") {
    long long triples = 0;
    for (int q : {2, 3}) {
        auto F = FieldSpec::make_q(q);
        for (int df = 1; df <= 3; ++df) {
            // keep the run quick but still well past exhaustive small coverage
            int gdeg = (q == 3 && df == 3) ? 1 : 3;
            for (const Poly& f : enumerate_polys(F, df, EnumMode::MonicExactDegree))
                for (const Poly& r : enumerate_polys(F, df - 1, EnumMode::AllDegAtMost))
                    for (const Poly& g : enumerate_polys(F, gdeg, EnumMode::AllDegAtMost)) {
                        REQUIRE(additive_char(g, r, f) == laurent_additive_char(g, r, f));
                        ++triples;
                    }
        }
    }
    CHECK(triples >= 10000);
}

TEST_CASE("additive_char is well-defined on residues and multiplicative in g") {
    for (int q : {2, 3}) {
        auto F = FieldSpec::make_q(q);
        for (int df = 1; df <= 2; ++df)
            for (const Poly& f : enumerate_polys(F, df, EnumMode::MonicExactDegree))
                for (const Poly& r : enumerate_polys(F, df - 1, EnumMode::AllDegAtMost))
                    for (const Poly& g : enumerate_polys(F, df, EnumMode::AllDegAtMost)) {
                        for (const Poly& h : enumerate_polys(F, 1, EnumMode::AllDegAtMost)) {
                            REQUIRE(additive_char(g, r + h * f, f) == additive_char(g, r, f));
                            REQUIRE(additive_char(g + h * f, r, f) == additive_char(g, r, f));
                        }
                        for (const Poly& g2 : enumerate_polys(F, df, EnumMode::AllDegAtMost))
                            REQUIRE(additive_char(g + g2, r, f) ==
                                    additive_char(g, r, f) * additive_char(g2, r, f));
                    }
    }
}

TEST_CASE("unit group structures of small moduli") {
    auto F3 = FieldSpec::make(3, 1);
    auto F2 = FieldSpec::make(2, 1);

    UnitGroup g1(Poly::t(F3));  // units {1,2}: cyclic of order 2
    CHECK(g1.phi() == 2);
    CHECK(g1.orders() == std::vector<long long>{2});

    UnitGroup g2(P(F2, {0, 0, 1}));  // t^2 over F_2: units {1, 1+t}, cyclic order 2
    CHECK(g2.phi() == 2);
    CHECK(g2.orders() == std::vector<long long>{2});

    // irreducible of degree d: cyclic of order q^d - 1
    UnitGroup g3(P(F2, {1, 1, 0, 1}));  // t^3+t+1
    CHECK(g3.phi() == 7);
    CHECK(g3.orders() == std::vector<long long>{7});

    UnitGroup g4(P(F3, {1, 0, 1}));  // t^2+1 irreducible over F_3
    CHECK(g4.orders() == std::vector<long long>{8});

    // t^4 over F_2: order 8 group C_4 x C_2
    UnitGroup g5(P(F2, {0, 0, 0, 0, 1}));
    CHECK(g5.phi() == 8);
    CHECK(g5.orders() == std::vector<long long>{4, 2});
}

TEST_CASE("unit group dlog is a bijection onto exponent space") {
    for (int q : {2, 3, 4}) {
        auto F = FieldSpec::make_q(q);
        for (int d = 1; d <= 3; ++d)
            for (const Poly& f : enumerate_polys(F, d, EnumMode::MonicExactDegree)) {
                UnitGroup G(f);
                long long prod = 1;
                for (long long o : G.orders()) prod *= o;
                REQUIRE(prod == G.phi());
                for (std::size_t i = 1; i < G.orders().size(); ++i)
                    REQUIRE(G.orders()[i - 1] % G.orders()[i] == 0);
                // dlog respects multiplication for a sample of pairs
                const auto& units = G.units();
                for (std::size_t a = 0; a < units.size(); ++a)
                    for (std::size_t b = a; b < units.size(); ++b) {
                        int c = G.mul(static_cast<int>(a), static_cast<int>(b));
                        for (std::size_t i = 0; i < G.orders().size(); ++i)
                            REQUIRE((G.dlog(static_cast<int>(a))[i] + G.dlog(static_cast<int>(b))[i]) % G.orders()[i] ==
                                    G.dlog(c)[i]);
                    }
            }
    }
}

TEST_CASE("character counts and principal character") {
    auto F3 = FieldSpec::make(3, 1);
    auto g_one = std::make_shared<const UnitGroup>(Poly::one(F3));
    auto chars_one = enumerate_characters(g_one);
    REQUIRE(chars_one.size() == 1);
    CHECK(chars_one[0](Poly::t(F3)) == CycValue::integer(1));

    auto gt = std::make_shared<const UnitGroup>(Poly::t(F3));
    auto chars_t = enumerate_characters(gt);
    REQUIRE(chars_t.size() == 2);
    CHECK(chars_t[0].is_principal());
    CHECK(chars_t[1](Poly::constant(F3, 2)) == CycValue::integer(-1));

    auto gt2 = std::make_shared<const UnitGroup>(P(F3, {0, 0, 1}));
    CHECK(enumerate_characters(gt2).size() == 6);
}

TEST_CASE("character multiplicativity, zero off units, periodicity") {
    auto F3 = FieldSpec::make(3, 1);
    Poly f = P(F3, {0, 0, 1});  // t^2
    auto G = std::make_shared<const UnitGroup>(f);
    for (const Character& chi : enumerate_characters(G)) {
        for (const Poly& r : enumerate_polys(F3, 2, EnumMode::AllDegAtMost)) {
            CHECK(chi(r) == chi(r.mod(f)));
            if (gcd(r.is_zero() ? f : r, f).degree() != 0) CHECK(chi(r).is_zero());
            for (const Poly& s : enumerate_polys(F3, 1, EnumMode::AllDegAtMost))
                REQUIRE(chi(r * s) == chi(r) * chi(s));
        }
    }
}

TEST_CASE("primitivity") {
    auto F3 = FieldSpec::make(3, 1);
    // chi_0 mod f with deg f >= 1 is never primitive
    auto gt = std::make_shared<const UnitGroup>(Poly::t(F3));
    auto chars = enumerate_characters(gt);
    CHECK_FALSE(is_primitive(chars[0]));
    CHECK(is_primitive(chars[1]));  // non-principal mod irreducible

    // mod t^2 over F_3: characters factoring through mod t are not primitive
    Poly t2 = P(F3, {0, 0, 1});
    auto gt2 = std::make_shared<const UnitGroup>(t2);
    int primitive_count = 0;
    for (const Character& chi : enumerate_characters(gt2)) {
        bool prim = is_primitive(chi);
        if (prim) ++primitive_count;
        // cross-check against the distinguishing-pair formulation, brute force
        bool spec_prim = true;
        auto divisors = std::vector<Poly>{Poly::one(F3), Poly::t(F3)};
        for (const Poly& d : divisors) {
            bool found_pair = false;
            for (const Poly& r : gt2->units())
                for (const Poly& s : gt2->units())
                    if ((r - s).mod(d).is_zero() && chi(r) != chi(s)) found_pair = true;
            if (!found_pair) spec_prim = false;
        }
        REQUIRE(prim == spec_prim);
    }
    // phi(t^2) - phi(t) = 6 - 2 = 4 primitive characters
    CHECK(primitive_count == 4);

    // # primitive mod irreducible P equals phi(P) - 1
    for (int q : {2, 3}) {
        auto F = FieldSpec::make_q(q);
        for (int d = 1; d <= 2; ++d)
            for (const Poly& Pp : enumerate_polys(F, d, EnumMode::MonicExactDegree)) {
                if (!is_irreducible(Pp)) continue;
                auto G = std::make_shared<const UnitGroup>(Pp);
                int count = 0;
                for (const Character& chi : enumerate_characters(G))
                    if (is_primitive(chi)) ++count;
                REQUIRE(count == euler_phi(Pp) - 1);
            }
    }
}

TEST_CASE("gauss sums: pinned small values and |tau|^2 = q^{deg f} for primitive chi") {
    auto F2 = FieldSpec::make(2, 1);
    auto gt = std::make_shared<const UnitGroup>(Poly::t(F2));
    auto chars = enumerate_characters(gt);  // only chi_0, phi(t) = 1
    REQUIRE(chars.size() == 1);
    CHECK(gauss_sum(chars[0]) == CycValue::integer(-1));  // tau = e(1/t) = -1

    auto F3 = FieldSpec::make(3, 1);
    auto gt3 = std::make_shared<const UnitGroup>(Poly::t(F3));
    auto chars3 = enumerate_characters(gt3);
    CHECK(gauss_sum(chars3[1]).abs_squared() == CycValue::integer(3));

    for (int q : {2, 3}) {
        auto F = FieldSpec::make_q(q);
        for (int d = 1; d <= 2; ++d)
            for (const Poly& f : enumerate_polys(F, d, EnumMode::MonicExactDegree)) {
                auto G = std::make_shared<const UnitGroup>(f);
                long long qd = 1;
                for (int i = 0; i < d; ++i) qd *= q;
                for (const Character& chi : enumerate_characters(G)) {
                    if (!is_primitive(chi)) continue;
                    CycValue t = gauss_sum(chi);
                    REQUIRE(t.abs_squared() == CycValue::integer(qd));        // exact
                    REQUIRE(std::abs(std::norm(t.embed()) - qd) < 1e-9);      // numeric 1e-9
                }
            }
    }
}

TEST_CASE("full-period character sum vanishes for non-principal chi") {
    auto F3 = FieldSpec::make(3, 1);
    Poly f = P(F3, {0, 0, 1});
    auto G = std::make_shared<const UnitGroup>(f);
    for (const Character& chi : enumerate_characters(G)) {
        CycValue s = CycValue::zero(static_cast<int>(G->exponent()));
        for (const Poly& r : G->units()) s = s + chi(r);
        if (chi.is_principal()) CHECK(s == CycValue::integer(G->phi()));
        else CHECK(s.is_zero());
    }
}

TEST_CASE("orthogonality suite passes on small moduli") {
    for (int q : {2, 3, 4}) {
        auto F = FieldSpec::make_q(q);
        for (int d = 1; d <= 2; ++d)
            for (const Poly& f : enumerate_polys(F, d, EnumMode::MonicExactDegree)) {
                auto rep = orthogonality_suite(f);
                REQUIRE(rep.ok);
                long long qd = 1;
                for (int i = 0; i < d; ++i) qd *= q;
                // deg g <= 2 deg f gives q^{2d+1} additive checks
                CHECK(rep.additive_checks == qd * qd * q);
            }
    }
    // and on the trivial modulus
    auto F2 = FieldSpec::make(2, 1);
    CHECK(orthogonality_suite(Poly::one(F2)).ok);
}
