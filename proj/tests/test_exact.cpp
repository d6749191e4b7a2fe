#include <doctest.h>

#include "ringdens/exact.hpp"
#include "ringdens/primes.hpp"

using namespace ringdens;
using namespace ringdens::exact;

namespace {

CertifiedInterval iv_div_pos(const CertifiedInterval& a, const CertifiedInterval& b) {
    REQUIRE(b.lo > 0);
    return {a.lo / b.hi, a.hi / b.lo};
}

}  // namespace

TEST_CASE("local factor identities hold exactly") {
    for (std::uint64_t p : shared_sieve().primes_below(200)) {
        for (int n = 2; n <= 5; ++n) {
            auto lf = local_factors(p, n);
            CHECK(lf.alpha * (1 + lf.beta) == 1);
            Rational pn(pow_int(Integer(static_cast<unsigned long>(p)),
                                static_cast<unsigned long>(n)));
            CHECK(lf.beta > 1 / (2 * pn));
            CHECK(lf.beta < 1 / pn);
        }
    }
    CHECK(local_factors(2, 2).alpha == Rational(6, 7));
    CHECK(local_factors(2, 2).beta == Rational(1, 6));
    CHECK_THROWS_AS(local_factors(4, 2), std::domain_error);
    CHECK_THROWS_AS(local_factors(2, 1), std::domain_error);
}

TEST_CASE("tail_factor is a bracket shrinking in N") {
    auto t1 = tail_factor(100, 2);
    auto t2 = tail_factor(1000, 2);
    CHECK(t1.hi == 1);
    CHECK(t1.lo < t2.lo);
    CHECK(t1.contains(t2));
    CHECK(tail_factor(100, 2).lo == 1 - Rational(1, 99));
    CHECK(tail_factor(10, 3).lo == 1 - Rational(1, 2 * 81));
}

TEST_CASE("zeta_interval brackets reference values") {
    Rational tol(1, 1000000);
    auto z2 = zeta_interval(2, tol);
    CHECK(z2.width() <= tol);
    // pi^2/6 = 1.6449340668...
    CHECK(z2.lo < Rational(16449341, 10000000));
    CHECK(z2.hi > Rational(16449340, 10000000));
    auto z3 = zeta_interval(3, tol);
    CHECK(z3.lo < Rational(12020570, 10000000));  // 1.2020569...
    CHECK(z3.hi > Rational(12020569, 10000000));
}

TEST_CASE("zeta_ratio agrees with the direct series oracle") {
    Rational tol(1, 1000000);
    for (int n = 2; n <= 3; ++n) {
        auto product = zeta_ratio(n, tol);
        CHECK(product.width() <= tol);
        auto oracle = iv_div_pos(zeta_interval(n + 1, tol), zeta_interval(n, tol));
        CHECK(product.intersects(oracle));
    }
    auto with_cutoff = zeta_ratio_with_cutoff(2, Rational(1, 1000));
    CHECK(with_cutoff.interval.width() <= Rational(1, 1000));
    CHECK(with_cutoff.cutoff > 2);
}

TEST_CASE("partitions_with_parts enumerates correctly") {
    CHECK(partitions_with_parts(6, 1).size() == 1);
    CHECK(partitions_with_parts(6, 3).size() == 3);  // 4+1+1, 3+2+1, 2+2+2
    CHECK(partitions_with_parts(6, 6).size() == 1);
    CHECK_THROWS_AS(partitions_with_parts(6, 7), std::domain_error);
    size_t total = 0;
    for (int i = 1; i <= 8; ++i) total += partitions_with_parts(8, i).size();
    CHECK(total == 22);  // p(8)
    for (const auto& part : partitions_with_parts(9, 4)) {
        int sum = 0;
        for (int v : part.parts) sum += v;
        CHECK(sum == 9);
        CHECK(part.parts.size() == 4);
        int from_mult = 0;
        for (const auto& [v, b] : part.multiplicity) from_mult += v * b;
        CHECK(from_mult == 9);
    }
}

TEST_CASE("stirling_density_row sums to one and matches small cases") {
    for (int m = 1; m <= 12; ++m) {
        auto row = stirling_density_row(m);
        Rational sum(0);
        for (const auto& [i, q] : row) {
            CHECK(q > 0);
            sum += q;
        }
        CHECK(sum == 1);
    }
    auto row3 = stirling_density_row(3);
    CHECK(row3.at(1) == Rational(1, 3));
    CHECK(row3.at(2) == Rational(1, 2));
    CHECK(row3.at(3) == Rational(1, 6));
    auto row2 = stirling_density_row(2);
    CHECK(row2.at(1) == Rational(1, 2));
    CHECK(row2.at(2) == Rational(1, 2));
}
