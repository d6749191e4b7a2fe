#include <doctest.h>

#include "ringdens/profile.hpp"

using namespace ringdens;
using namespace ringdens::profile;

TEST_CASE("rational profile") {
    auto q = make_rational_profile();
    CHECK(q.degree == 1);
    CHECK(q.galois);
    for (std::uint64_t p : {2ull, 3ull, 97ull}) CHECK(q.r(p) == 1);
}

TEST_CASE("quadratic profiles follow the character") {
    auto k = make_quadratic_profile(Integer(-7));  // d_K = -7
    CHECK(k.degree == 2);
    CHECK(k.galois);
    REQUIRE(k.quadratic_m.has_value());
    CHECK(*k.quadratic_m == -7);
    CHECK(k.r(2) == 2);  // -7 = 1 mod 8: split
    CHECK(k.r(7) == 1);  // ramified
    CHECK(k.r(3) == 1);  // -7 = 2 mod 3: inert
    CHECK(k.r(11) == 2); // 4 is a square mod 11

    auto g = make_quadratic_profile(Integer(-1));  // d_K = -4
    CHECK(g.r(2) == 1);
    CHECK(g.r(5) == 2);
    CHECK(g.r(3) == 1);

    CHECK_THROWS_AS(make_quadratic_profile(Integer(12)), std::domain_error);
    CHECK_THROWS_AS(make_quadratic_profile(Integer(1)), std::domain_error);
}

TEST_CASE("cyclotomic profiles use the multiplicative order") {
    auto z5 = make_cyclotomic_profile(5);
    CHECK(z5.degree == 4);
    CHECK(z5.galois);
    CHECK(z5.r(11) == 4);  // 11 = 1 mod 5, order 1
    CHECK(z5.r(2) == 1);   // order of 2 mod 5 is 4
    CHECK(z5.r(19) == 2);  // 19 = 4 mod 5, order 2
    CHECK(z5.r(5) == 1);   // ramified: m' = 1

    auto z8 = make_cyclotomic_profile(8);
    CHECK(z8.degree == 4);
    CHECK(z8.r(17) == 4);  // 17 = 1 mod 8
    CHECK(z8.r(7) == 2);   // order of 7 mod 8 is 2

    CHECK_THROWS_AS(make_cyclotomic_profile(6), std::domain_error);
    CHECK_THROWS_AS(make_cyclotomic_profile(2), std::domain_error);
}

TEST_CASE("table profile rejects unknown primes") {
    auto t = make_table_profile("cubic-sample", 3, false, {{2, 1}, {3, 3}, {5, 2}});
    CHECK(t.degree == 3);
    CHECK(!t.galois);
    CHECK(t.r(3) == 3);
    CHECK_THROWS_AS(t.r(7), std::domain_error);
}
