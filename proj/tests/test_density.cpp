#include <doctest.h>

#include "ringdens/density.hpp"
#include "ringdens/errors.hpp"
#include "ringdens/exact.hpp"
#include "ringdens/primes.hpp"

using namespace ringdens;
using namespace ringdens::density;

namespace {

// Brute-force subset-sum oracle: coefficient of z^t in
// prod_{p < N} (1 + z^r(p) beta_p), by explicit subset enumeration.
std::vector<Rational> dp_oracle(const SplittingProfile& profile, int n, int t_max,
                                std::uint64_t N) {
    auto primes = shared_sieve().primes_below(N);
    REQUIRE(primes.size() <= 20);
    std::vector<Rational> out(static_cast<size_t>(t_max) + 1, Rational(0));
    for (std::uint64_t mask = 0; mask < (1ull << primes.size()); ++mask) {
        int t = 0;
        Rational prod(1);
        for (size_t i = 0; i < primes.size(); ++i) {
            if (!(mask >> i & 1)) continue;
            t += profile.r(primes[i]);
            prod *= exact::local_factors(primes[i], n).beta;
        }
        if (t <= t_max) out[static_cast<size_t>(t)] += prod;
    }
    return out;
}

}  // namespace

TEST_CASE("exact_dp matches the subset-enumeration oracle") {
    auto q = profile::make_rational_profile();
    auto k7 = profile::make_quadratic_profile(Integer(-7));
    for (std::uint64_t N : {3ull, 8ull, 13ull}) {
        for (const auto& profile : {q, k7}) {
            auto fast = exact_dp(profile, 2, 6, N);
            auto slow = dp_oracle(profile, 2, 6, N);
            REQUIRE(fast.size() == slow.size());
            for (size_t t = 0; t < fast.size(); ++t) CHECK(fast[t] == slow[t]);
        }
    }
}

TEST_CASE("lambda sets enumerate weighted compositions") {
    // Lambda(2, 4): (l1, l2) with l1 + 2 l2 = 4 -> (4,0), (2,1), (0,2)
    CHECK(lambda_set(2, 4).size() == 3);
    CHECK(lambda_set(1, 5).size() == 1);
    CHECK(lambda_set(3, 0).size() == 1);
    // Lambda0(4, 4): support on divisors {1, 2, 4} of 4
    for (const auto& tuple : lambda0_set(4, 4)) {
        CHECK(tuple[2] == 0);  // l_3 must vanish
        int sum = 0;
        for (size_t j = 0; j < tuple.size(); ++j) sum += static_cast<int>(j + 1) * tuple[j];
        CHECK(sum == 4);
    }
    CHECK(lambda0_set(4, 4).size() == 4);  // (4,0,0,0),(2,1,0,0),(0,2,0,0),(0,0,0,1)
}

TEST_CASE("dp decomposes over the lambda grouping") {
    // dp(t) = sum over Lambda(d, t) of prod_j b_{j, l_j} at equal truncation.
    auto k7 = profile::make_quadratic_profile(Integer(-7));
    const std::uint64_t N = 40;
    const int t_max = 5;
    auto dp = exact_dp(k7, 2, t_max, N);
    std::vector<std::vector<Rational>> b;  // b[j-1][t]
    for (int j = 1; j <= 2; ++j) b.push_back(exact_b(k7, 2, j, t_max, N));
    for (int t = 0; t <= t_max; ++t) {
        Rational sum(0);
        for (const auto& tuple : lambda_set(2, t)) {
            Rational prod(1);
            for (int j = 1; j <= 2; ++j) prod *= b[static_cast<size_t>(j - 1)][static_cast<size_t>(tuple[static_cast<size_t>(j - 1)])];
            sum += prod;
        }
        CHECK(sum == dp[static_cast<size_t>(t)]);
    }
}

TEST_CASE("elementary symmetric sums satisfy e_a e_b >= e_{a+b}") {
    auto k7 = profile::make_quadratic_profile(Integer(-7));
    for (int j = 1; j <= 2; ++j) {
        auto b = exact_b(k7, 2, j, 8, 200);
        for (int t1 = 1; t1 <= 4; ++t1)
            for (int t2 = 1; t2 <= 4; ++t2)
                CHECK(b[static_cast<size_t>(t1)] * b[static_cast<size_t>(t2)] >=
                      b[static_cast<size_t>(t1 + t2)]);
    }
}

TEST_CASE("prob_e and prob_ring_equals shrink with tol and match scaling") {
    auto wide = prob_e(1, 2, Rational(1, 100));
    auto narrow = prob_e(1, 2, Rational(1, 100000));
    CHECK(wide.width() <= Rational(1, 100));
    CHECK(narrow.width() <= Rational(1, 100000));
    CHECK(wide.intersects(narrow));
    // P[e = k] / P[e = 1] = phi(k) / k^(n+1) exactly; check k = 2, n = 2
    auto e1 = prob_e(1, 2, Rational(1, 1000000));
    auto e2 = prob_e(2, 2, Rational(1, 1000000));
    CertifiedInterval scaled = iv_scale(e1, Rational(1, 8));
    CHECK(scaled.intersects(e2));
    // ring density at k = 1 equals e density at k = 1 (both zeta ratio)
    auto r1 = prob_ring_equals(1, 2, Rational(1, 1000000));
    CHECK(r1.intersects(e1));
    // ring density at prime k: zeta ratio * beta_p
    auto r2 = prob_ring_equals(2, 2, Rational(1, 1000000));
    auto z = exact::zeta_ratio(2, Rational(1, 10000000));
    CHECK(iv_scale(z, exact::local_factors(2, 2).beta).intersects(r2));
}

TEST_CASE("prob_X_contains is an exact product") {
    auto q = profile::make_rational_profile();
    CHECK(prob_X_contains({2}, q, 2) == Rational(1, 7));
    Rational p2 = prob_X_contains({2}, q, 2);
    Rational p3 = prob_X_contains({3}, q, 2);
    CHECK(prob_X_contains({2, 3}, q, 2) == p2 * p3);
    CHECK(prob_X_contains({}, q, 2) == 1);
    CHECK_THROWS_AS(prob_X_contains({2, 2}, q, 2), std::domain_error);
    CHECK_THROWS_AS(prob_X_contains({4}, q, 2), std::domain_error);
}

TEST_CASE("coefficient_table brackets are consistent across tolerances") {
    auto q = profile::make_rational_profile();
    auto coarse = coefficient_table(q, 2, 6, Rational(1, 100));
    auto fine = coefficient_table(q, 2, 6, Rational(1, 100000));
    CHECK(fine.N >= coarse.N);
    for (int t = 0; t <= 6; ++t) {
        auto& c = coarse.intervals[static_cast<size_t>(t)];
        auto& f = fine.intervals[static_cast<size_t>(t)];
        CHECK(c.width() <= Rational(1, 100));
        CHECK(f.width() <= Rational(1, 100000));
        CHECK(c.intersects(f));
    }
    // t = 0 row is the zeta ratio itself
    CHECK(fine.intervals[0].intersects(exact::zeta_ratio(2, Rational(1, 1000000))));
    // total mass never exceeds 1
    Rational lo_sum(0);
    for (const auto& iv : fine.intervals) lo_sum += iv.lo;
    CHECK(lo_sum < 1);
}

TEST_CASE("coefficient_table refuses an impossible budget") {
    auto q = profile::make_rational_profile();
    CHECK_THROWS_AS(coefficient_table(q, 2, 10, Rational(1, 100000), 64), BudgetError);
}

TEST_CASE("expectation and variance match the series route") {
    auto q = profile::make_rational_profile();
    Rational tol(1, 100000);
    auto [ev, var] = expectation_variance(q, 2, tol);
    auto table = coefficient_table(q, 2, 24, tol);
    CertifiedInterval m1(Rational(0), Rational(0));
    CertifiedInterval m2(Rational(0), Rational(0));
    for (int t = 1; t <= 24; ++t) {
        m1 = iv_add(m1, iv_scale(table.intervals[static_cast<size_t>(t)], Rational(t)));
        m2 = iv_add(m2, iv_scale(table.intervals[static_cast<size_t>(t)], Rational(t) * t));
    }
    // truncation at t = 24 loses far less than the tolerances in play
    m1.hi += Rational(1, 1000000000);
    m2.hi += Rational(1, 1000000000);
    CHECK(ev.intersects(m1));
    CertifiedInterval var_series = iv_sub(m2, iv_mul(m1, m1));
    CHECK(var.intersects(var_series));
}

TEST_CASE("moment routes agree for s in 1..3") {
    auto k7 = profile::make_quadratic_profile(Integer(-7));
    for (int s = 1; s <= 3; ++s) {
        auto mom = moment(k7, 2, s, Rational(1, 1000));
        CHECK(mom.series.intersects(mom.combinatorial));
        CHECK(mom.series.lo > 0);
    }
}

TEST_CASE("monotonicity thresholds") {
    CHECK(general_threshold(2) == 0);
    CHECK(galois_threshold(2) == 0);
    CHECK(general_threshold(3) == 2 * 6 - 6 + 1);  // (d-1) lcm(1..d) - d(d+1)/2 + 1
    CHECK(general_threshold(4) == 3 * 12 - 10 + 1);
    CHECK(galois_threshold(3) == 3 * (2 - 1) - 4 + 1);  // d(tau-1) - sigma + 1 = 0
    CHECK(galois_threshold(4) == 4 * (3 - 1) - 7 + 1);  // = 2
}

TEST_CASE("monotonicity scan decides the rational profile") {
    auto q = profile::make_rational_profile();
    auto report = monotonicity_scan(q, 2, 8, Rational(1, 100000));
    CHECK(report.d == 1);
    CHECK(report.d1 == 1);
    for (const auto& c : report.comparisons) CHECK(c.relation == Relation::greater);
}

TEST_CASE("quadratic(-7) non-monotone start, then strictly decreasing by twos") {
    auto k7 = profile::make_quadratic_profile(Integer(-7));
    auto report = monotonicity_scan(k7, 2, 6, Rational(1, 100000));
    bool saw_a1_less_a2 = false;
    for (const auto& c : report.comparisons) {
        if (c.step == 1 && c.t == 1) {
            CHECK(c.relation == Relation::less);
            saw_a1_less_a2 = true;
        }
        if (c.step == 2) CHECK(c.relation == Relation::greater);
    }
    CHECK(saw_a1_less_a2);
}

TEST_CASE("csv rendering carries exact endpoints") {
    auto q = profile::make_rational_profile();
    auto table = coefficient_table(q, 2, 3, Rational(1, 1000));
    std::string csv = table_csv(table, 9);
    CHECK(csv.find("t,") == 0);
    CHECK(csv.find('/') != std::string::npos);  // exact rationals present
    size_t rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 5);  // header + t = 0..3
}
