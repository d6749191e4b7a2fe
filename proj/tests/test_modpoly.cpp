#include <doctest.h>

#include <cstdint>

#include "ringdens/factorstats.hpp"
#include "ringdens/modpoly.hpp"

using namespace ringdens;
using namespace ringdens::modp;

namespace {

std::uint64_t next_rand(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Poly random_monic(std::uint64_t& state, int deg, std::uint64_t p) {
    Poly f(static_cast<size_t>(deg) + 1);
    for (int i = 0; i < deg; ++i) f[static_cast<size_t>(i)] = next_rand(state) % p;
    f[static_cast<size_t>(deg)] = 1;
    return f;
}

// x^(p^e) - x mod f, used as the degree certificate below.
Poly frobenius_minus_x(const Poly& f, int e, std::uint64_t p) {
    Poly x{0, 1};
    Poly power = rem(x, f, p);
    for (int i = 0; i < e; ++i) power = pow_poly_mod(power, p, f, p);
    Poly diff = power;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    return diff;
}

}  // namespace

TEST_CASE("base arithmetic over Z/pZ") {
    CHECK(pow_mod(3, 100, 101) == 1);  // Fermat
    CHECK(inv_mod(7, 101) == 29);
    CHECK((7 * inv_mod(7, 13)) % 13 == 1);
    Poly a{1, 2, 1};  // (x+1)^2 mod 5
    Poly b{4, 1};     // x + 4 = x - 1
    CHECK(degree(mul(a, b, 5)) == 3);
    CHECK(degree(rem(a, b, 5)) == 0);  // (x+1)^2 at x=1 -> 4
    CHECK(rem(a, b, 5)[0] == 4);
    CHECK(gcd(a, Poly{1, 1}, 5) == Poly{1, 1});
    CHECK(quot(mul(a, b, 5), b, 5) == a);
    CHECK(derivative(Poly{3, 0, 0, 1}, 5) == Poly{0, 0, 3});
}

TEST_CASE("factor_distinct reconstructs the input") {
    std::uint64_t state = 42;
    const std::uint64_t primes[] = {5, 7, 11, 13, 101, 1009};
    int trials = 0;
    for (std::uint64_t p : primes) {
        for (int deg = 1; deg <= 8 && static_cast<std::uint64_t>(deg) < p; ++deg) {
            for (int rep = 0; rep < 40; ++rep) {
                Poly f = random_monic(state, deg, p);
                auto comps = factor_distinct(f, p);
                Poly rebuilt{1};
                for (const auto& c : comps) {
                    CHECK(degree(c.product) % c.factor_degree == 0);
                    CHECK(c.multiplicity >= 1);
                    // squarefree component: coprime to its derivative
                    CHECK(degree(gcd(c.product, derivative(c.product, p), p)) == 0);
                    for (int m = 0; m < c.multiplicity; ++m) rebuilt = mul(rebuilt, c.product, p);
                }
                CHECK(rebuilt == f);
                ++trials;
            }
        }
    }
    CHECK(trials > 1000);
}

TEST_CASE("distinct-degree components carry the degree they claim") {
    std::uint64_t state = 7;
    for (int rep = 0; rep < 60; ++rep) {
        std::uint64_t p = (rep % 2) ? 11 : 13;
        Poly f = random_monic(state, 6, p);
        for (const auto& c : factor_distinct(f, p)) {
            // every irreducible factor of degree d divides x^(p^d) - x ...
            CHECK(degree(gcd(c.product, frobenius_minus_x(c.product, c.factor_degree, p), p)) ==
                  degree(c.product));
            // ... and no factor of smaller degree e | d survives
            for (int e = 1; e < c.factor_degree; ++e)
                CHECK(degree(gcd(c.product, frobenius_minus_x(c.product, e, p), p)) <= 0);
        }
    }
}

TEST_CASE("irreducibility matches the Moebius count") {
    for (std::uint64_t p : {5ull, 7ull}) {
        for (int m = 1; m <= 3; ++m) {
            Integer expected = factorstats::irreducible_count(m, p);
            Integer found(0);
            std::uint64_t total = 1;
            for (int i = 0; i < m; ++i) total *= p;
            for (std::uint64_t code = 0; code < total; ++code) {
                Poly f(static_cast<size_t>(m) + 1);
                std::uint64_t c = code;
                for (int i = 0; i < m; ++i) {
                    f[static_cast<size_t>(i)] = c % p;
                    c /= p;
                }
                f[static_cast<size_t>(m)] = 1;
                if (is_irreducible(f, p)) ++found;
            }
            CHECK(found == expected);
        }
    }
    CHECK(is_irreducible(Poly{1, 1, 1}, 5));   // x^2+x+1 mod 5
    CHECK(!is_irreducible(Poly{4, 0, 1}, 5));  // x^2-1
}
