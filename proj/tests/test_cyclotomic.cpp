#include "doctest.h"

#include <cmath>

#include "qtsieve/cyclotomic.hpp"

using namespace qtsieve;

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<long long>{-1, 1});
    CHECK(cyclotomic_polynomial(2) == std::vector<long long>{1, 1});
    CHECK(cyclotomic_polynomial(3) == std::vector<long long>{1, 1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<long long>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<long long>{1, 0, -1, 0, 1});
    CHECK(euler_phi_int(105) == 48);
}

TEST_CASE("roots of unity: order relations") {
    CHECK(CycValue::root(2, 1) == CycValue::integer(-1));
    CHECK(CycValue::root(4, 2) == CycValue::integer(-1));
    // 1 + zeta_3 + zeta_3^2 = 0
    CycValue s = CycValue::root(3, 0) + CycValue::root(3, 1) + CycValue::root(3, 2);
    CHECK(s.is_zero());
    // zeta_6 = -zeta_3^2
    CHECK(CycValue::root(6, 1) == -CycValue::root(3, 2));
}

TEST_CASE("ring operations and conjugation") {
    for (int m : {3, 4, 5, 6, 8, 12}) {
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                CHECK(CycValue::root(m, a) * CycValue::root(m, b) == CycValue::root(m, a + b));
                CHECK(CycValue::root(m, a).conj() == CycValue::root(m, m - a));
            }
        for (int a = 0; a < m; ++a)
            CHECK(CycValue::root(m, a).abs_squared() == CycValue::integer(1));
    }
}

TEST_CASE("mixed-order arithmetic lifts to the lcm") {
    CycValue x = CycValue::root(3, 1) * CycValue::root(4, 1);  // zeta_12^{4+3}
    CHECK(x == CycValue::root(12, 7));
    CHECK((CycValue::root(2, 1) + CycValue::root(3, 1)).order() == 6);
}

TEST_CASE("embedding matches the exact values") {
    for (int m : {3, 5, 8, 12}) {
        for (int k = 0; k < m; ++k) {
            auto z = CycValue::root(m, k).embed();
            double ang = 2.0 * 3.14159265358979323846 * k / m;
            CHECK(std::abs(z.real() - std::cos(ang)) < 1e-12);
            CHECK(std::abs(z.imag() - std::sin(ang)) < 1e-12);
        }
    }
}

TEST_CASE("integer detection") {
    CHECK(CycValue::integer(7).is_integer());
    CHECK(CycValue::root(3, 1).is_integer() == false);
    CycValue v = CycValue::root(3, 1) + CycValue::root(3, 2);  // = -1
    CHECK(v.is_integer());
    CHECK(v.as_integer() == -1);
    CHECK_THROWS_AS(CycValue::root(5, 1).as_integer(), std::domain_error);
}

TEST_CASE("accumulator equals naive summation") {
    CycAccum acc(12);
    CycValue naive = CycValue::zero(12);
    for (int k = 0; k < 40; ++k) {
        acc.add_root(k * 5 + 1, k % 3 - 1);
        naive = naive + CycValue::root(12, k * 5 + 1) * CycValue::integer(k % 3 - 1);
    }
    CHECK(acc.value() == naive);
}

TEST_CASE("geometric sums vanish: sum of all m-th roots is zero for m > 1") {
    for (int m : {2, 3, 4, 6, 9, 10, 15}) {
        CycAccum acc(m);
        for (int k = 0; k < m; ++k) acc.add_root(k);
        CHECK(acc.value().is_zero());
    }
}
