#include "doctest.h"

#include "qtsieve/field.hpp"

using namespace qtsieve;

TEST_CASE("F_4 arithmetic against the modulus u^2+u+1") {
    auto F4 = FieldSpec::make(2, 2);
    const int u = F4->from_coords({0, 1});
    const int u1 = F4->from_coords({1, 1});
    CHECK(F4->q() == 4);
    CHECK(F4->mul(u, u) == u1);          // u^2 = u+1
    CHECK(F4->mul(u, u1) == 1);          // u(u+1) = u^2+u = 1
    CHECK(F4->add(u, u) == 0);           // char 2
    CHECK(F4->inv(u) == u1);
}

TEST_CASE("additive identity, self subtraction") {
    for (int q : {2, 3, 4, 5, 8, 9}) {
        auto F = FieldSpec::make_q(q);
        for (int x = 0; x < F->q(); ++x) {
            CHECK(F->add(x, 0) == x);
            CHECK(F->sub(x, x) == 0);
        }
    }
}

TEST_CASE("trace examples") {
    auto F2 = FieldSpec::make(2, 1);
    CHECK(F2->trace(0) == 0);
    CHECK(F2->trace(1) == 1);  // n=1: trace is the identity

    auto F4 = FieldSpec::make(2, 2);
    const int u = F4->from_coords({0, 1});
    CHECK(F4->trace(u) == 1);  // u + u^2 = u + (u+1) = 1
    CHECK(F4->trace(0) == 0);
}

TEST_CASE("trace is F_p-linear, surjective with equal fibers, Frobenius-fixed") {
    for (int q : {2, 3, 4, 8, 9, 16}) {
        auto F = FieldSpec::make_q(q);
        const int p = F->p();
        // linearity over scalars a, b in F_p embedded as constants
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b)
                for (int x = 0; x < F->q(); ++x)
                    for (int y = 0; y < F->q(); ++y) {
                        int lhs = F->trace(F->add(F->mul(F->from_scalar(a), x), F->mul(F->from_scalar(b), y)));
                        int rhs = (a * F->trace(x) + b * F->trace(y)) % p;
                        REQUIRE(lhs == rhs);
                    }
        std::vector<int> fiber(p, 0);
        for (int x = 0; x < F->q(); ++x) {
            fiber[F->trace(x)]++;
            REQUIRE(F->trace(F->frobenius(x)) == F->trace(x));
        }
        for (int c = 0; c < p; ++c) CHECK(fiber[c] == F->q() / p);
    }
}

TEST_CASE("enumeration order is lexicographic with constant coordinate least significant") {
    auto F2 = FieldSpec::make(2, 1);
    CHECK(F2->enumerate() == std::vector<int>{0, 1});
    auto F3 = FieldSpec::make(3, 1);
    CHECK(F3->enumerate() == std::vector<int>{0, 1, 2});
    auto F4 = FieldSpec::make(2, 2);
    CHECK(F4->enumerate() == std::vector<int>{0, 1, 2, 3});
    CHECK(F4->element_str(2) == "u");
    CHECK(F4->element_str(3) == "u+1");
}

TEST_CASE("field axioms hold on small fields") {
    for (int q : {4, 9}) {
        auto F = FieldSpec::make_q(q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                CHECK(F->mul(a, b) == F->mul(b, a));
                for (int c = 0; c < q; ++c) {
                    REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
                    REQUIRE(F->mul(a, F->mul(b, c)) == F->mul(F->mul(a, b), c));
                }
            }
        for (int a = 1; a < q; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
    }
}

TEST_CASE("errors: zero inversion, bad modulus") {
    auto F3 = FieldSpec::make(3, 1);
    CHECK_THROWS_AS(F3->inv(0), std::domain_error);
    CHECK_THROWS_AS(FieldSpec(2, 2, {1, 0, 1}), std::invalid_argument);  // u^2+1 = (u+1)^2 over F_2
    CHECK_THROWS_AS(FieldSpec(4, 1, {0, 1}), std::invalid_argument);     // 4 not prime
}
