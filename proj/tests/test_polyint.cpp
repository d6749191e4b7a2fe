#include <doctest.h>

#include <cstdint>

#include "ringdens/polyint.hpp"

using namespace ringdens;
using namespace ringdens::polyint;

namespace {

std::uint64_t next_rand(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

long rand_in(std::uint64_t& state, long lo, long hi) {
    return lo + static_cast<long>(next_rand(state) % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

TEST_CASE("polynomial basics") {
    auto f = IntPolynomial::from_ints({6, 0, 9});  // 9x^2 + 6
    CHECK(f.degree() == 2);
    CHECK(f.height() == 9);
    CHECK(f.content() == 3);
    CHECK(f.eval(Integer(2)) == 42);
    CHECK(f.derivative() == IntPolynomial::from_ints({0, 18}));
    CHECK_THROWS_AS(IntPolynomial({Integer(1), Integer(0)}), std::invalid_argument);
}

TEST_CASE("normalize canonicalizes and rejects") {
    auto r1 = normalize({Integer(2), Integer(4)});  // 4x + 2 -> 2x + 1
    REQUIRE(r1.accepted());
    CHECK(r1.rep->poly == IntPolynomial::from_ints({1, 2}));
    CHECK(r1.rep->weight == 1);
    auto r2 = normalize({Integer(1), Integer(0), Integer(-1)});  // -x^2 + 1 reducible
    CHECK(!r2.accepted());
    CHECK(r2.reason == RejectReason::reducible);
    auto r3 = normalize({Integer(0), Integer(0)});
    CHECK(r3.reason == RejectReason::zero_polynomial);
    auto r4 = normalize({Integer(1), Integer(0), Integer(-2)});  // 1 - 2x^2 -> 2x^2 - 1
    REQUIRE(r4.accepted());
    CHECK(r4.rep->poly.coeffs[2] == 2);
    CHECK(e_invariant(*r4.rep) == 2);
    CHECK(e_invariant(*r1.rep) == 2);
}

TEST_CASE("discriminant of named polynomials") {
    CHECK(discriminant(IntPolynomial::from_ints({1, 1, 0, 1})) == -31);  // x^3 + x + 1
    CHECK(discriminant(IntPolynomial::from_ints({-1, 0, 0, 1})) == -27);  // x^3 - 1
    CHECK(discriminant(IntPolynomial::from_ints({1, 0, 1})) == -4);       // x^2 + 1
    CHECK(discriminant(IntPolynomial::from_ints({-1, -1, 1})) == 5);      // x^2 - x - 1
    // quintic: disc(x^5 - x + 1) = 2869 = 19 * 151
    CHECK(discriminant(IntPolynomial::from_ints({1, -1, 0, 0, 0, 1})) == 2869);
}

TEST_CASE("Sylvester discriminant matches the depressed-cubic formula") {
    std::uint64_t state = 2026;
    for (int rep = 0; rep < 500; ++rep) {
        long p = rand_in(state, -50, 50);
        long q = rand_in(state, -50, 50);
        auto f = IntPolynomial::from_ints({q, p, 0, 1});
        Integer expected = -4 * pow_int(Integer(p), 3) - 27 * Integer(q) * Integer(q);
        CHECK(discriminant(f) == expected);
    }
}

TEST_CASE("quadratic discriminant formula, random leading coefficients") {
    std::uint64_t state = 99;
    for (int rep = 0; rep < 500; ++rep) {
        long a = rand_in(state, -30, 30);
        if (a == 0) continue;
        long b = rand_in(state, -30, 30);
        long c = rand_in(state, -30, 30);
        auto f = IntPolynomial::from_ints({c, b, a});
        CHECK(discriminant(f) == Integer(b) * b - 4 * Integer(a) * c);
    }
}

TEST_CASE("disc_monomial_coefficient magnitudes") {
    for (int n = 2; n <= 6; ++n) {
        Integer c = disc_monomial_coefficient(n);
        Integer expected = pow_int(Integer(n - 1), static_cast<unsigned long>(n - 1));
        CHECK(abs(c) == expected);
    }
}

TEST_CASE("irreducibility pipeline against a quadratic oracle") {
    // Primitive ax^2 + bx + c is irreducible over Q iff b^2 - 4ac is not a
    // perfect square.
    for (long a = 1; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b)
            for (long c = -6; c <= 6; ++c) {
                auto f = IntPolynomial::from_ints({c, b, a});
                if (f.content() != 1) continue;
                Integer disc = Integer(b) * b - 4 * Integer(a) * c;
                bool oracle = !(disc >= 0 && is_perfect_square(disc));
                CHECK(is_irreducible(f) == oracle);
            }
}

TEST_CASE("irreducibility spot checks in higher degree") {
    CHECK(is_irreducible(IntPolynomial::from_ints({1, 1, 1, 1, 1})));   // Phi_5
    CHECK(!is_irreducible(IntPolynomial::from_ints({1, 2, 3, 2, 1})));  // (x^2+x+1)^2
    CHECK(is_irreducible(IntPolynomial::from_ints({2, 0, 0, 0, 1})));   // Eisenstein at 2
    CHECK(!is_irreducible(IntPolynomial::from_ints({-1, 0, 0, 0, 1}))); // x^4 - 1
    // Phi_5(x^2) = Phi_5(x) * Phi_10(x)
    CHECK(!is_irreducible(IntPolynomial::from_ints({1, 0, 1, 0, 1, 0, 1, 0, 1})));
}

TEST_CASE("square_class splits off the largest square") {
    auto s = square_class(Integer(-28));
    CHECK(s.m == -7);
    CHECK(s.y == 2);
    s = square_class(Integer(180));
    CHECK(s.m == 5);
    CHECK(s.y == 6);
    s = square_class(Integer(-7));
    CHECK(s.m == -7);
    CHECK(s.y == 1);
    std::uint64_t state = 5;
    for (int rep = 0; rep < 300; ++rep) {
        Integer D(rand_in(state, -100000, 100000));
        if (D == 0) continue;
        auto sc = square_class(D);
        CHECK(sc.m * sc.y * sc.y == D);
        // m squarefree: no prime square divides it
        Integer m = abs(sc.m);
        for (long p = 2; p * p <= m; ++p) CHECK(m % (Integer(p) * p) != 0);
    }
}
