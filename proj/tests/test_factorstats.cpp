#include <doctest.h>

#include "ringdens/errors.hpp"
#include "ringdens/exact.hpp"
#include "ringdens/factorstats.hpp"

using namespace ringdens;
using namespace ringdens::factorstats;

TEST_CASE("ModPPoly validates its input") {
    CHECK_THROWS_AS(ModPPoly(4, modp::Poly{1, 1}), std::domain_error);     // not prime
    CHECK_THROWS_AS(ModPPoly(5, modp::Poly{1, 2}), std::domain_error);     // not monic
    CHECK_THROWS_AS(ModPPoly(3, modp::Poly{1, 0, 0, 1}), std::domain_error);  // p <= deg
    ModPPoly ok(5, modp::Poly{6, 1});  // residues taken mod p
    CHECK(ok.coeffs == modp::Poly{1, 1});
}

TEST_CASE("factor profiles of known polynomials") {
    // x^2 + 1 = (x + 2)(x + 3) mod 5
    auto split = factor_profile(ModPPoly(5, modp::Poly{1, 0, 1}));
    CHECK(split.distinct_count == 2);
    CHECK(split.degree_multiset == std::vector<int>{1, 1});
    CHECK(split.squarefree);
    // (x + 1)^2 mod 5
    auto repeated = factor_profile(ModPPoly(5, modp::Poly{1, 2, 1}));
    CHECK(repeated.distinct_count == 1);
    CHECK(!repeated.squarefree);
    // x^2 + x + 1 irreducible mod 5
    auto inert = factor_profile(ModPPoly(5, modp::Poly{1, 1, 1}));
    CHECK(inert.distinct_count == 1);
    CHECK(inert.degree_multiset == std::vector<int>{2});
    CHECK(inert.squarefree);
}

TEST_CASE("irreducible_count formula") {
    CHECK(irreducible_count(1, 5) == 5);
    CHECK(irreducible_count(2, 5) == 10);   // (25 - 5) / 2
    CHECK(irreducible_count(3, 5) == 40);   // (125 - 5) / 3
    CHECK(irreducible_count(4, 5) == 150);  // (625 - 25) / 4
    CHECK(irreducible_count(2, 11) == 55);
}

TEST_CASE("census totals, marginals, and squarefree fraction") {
    for (auto [m, p] : {std::pair<int, std::uint64_t>{2, 5}, {3, 7}, {3, 11}}) {
        auto census = exact_factor_census(m, p);
        CHECK(census.total == pow_int(Integer(static_cast<unsigned long>(p)),
                                      static_cast<unsigned long>(m)));
        std::uint64_t all = 0, squarefree = 0;
        for (const auto& [i, c] : census.counts) all += c;
        for (const auto& [i, c] : census.squarefree_counts) squarefree += c;
        CHECK(all == census.total);
        // squarefree fraction is exactly 1 - 1/p
        CHECK(make_rational(Integer(static_cast<unsigned long>(squarefree)),
                            Integer(static_cast<unsigned long>(census.total))) ==
              1 - make_rational(Integer(1), Integer(static_cast<unsigned long>(p))));
        // squarefree marginals match the binomial-partition formula
        for (const auto& [i, c] : census.squarefree_counts)
            CHECK(Integer(static_cast<unsigned long>(c)) == squarefree_census_formula(m, p, i));
        // i = m squarefree class means m distinct linear factors: C(p, m)
        Integer linear;
        mpz_bin_uiui(linear.get_mpz_t(), static_cast<unsigned long>(p),
                     static_cast<unsigned long>(m));
        CHECK(census.squarefree_counts.at(m) == linear);
    }
    // the squarefree i = 1 class is exactly the irreducible cubics
    auto census = exact_factor_census(3, 7);
    CHECK(census.squarefree_counts.at(1) == irreducible_count(3, 7));
    CHECK(squarefree_census_formula(3, 7, 1) == irreducible_count(3, 7));
}

TEST_CASE("budget refusal names the required budget") {
    try {
        exact_factor_census(5, 101, 1000);
        FAIL("expected BudgetError");
    } catch (const BudgetError& e) {
        CHECK(e.required_budget >= 101ull * 101 * 101 * 101 * 101);
    }
}

TEST_CASE("limit densities equal the Stirling row and sum to one") {
    for (int m = 1; m <= 12; ++m) {
        auto row = exact::stirling_density_row(m);
        Rational sum(0);
        for (int i = 1; i <= m; ++i) {
            Rational q = limit_density(m, i);
            CHECK(q == row.at(i));
            sum += q;
        }
        CHECK(sum == 1);
    }
    CHECK(limit_density(2, 1) == Rational(1, 2));
    CHECK(limit_density(3, 2) == Rational(1, 2));
    CHECK(limit_density(4, 2) == Rational(11, 24));
}

TEST_CASE("census fractions drift toward the limit law as p grows") {
    auto small = exact_factor_census(3, 11);
    auto large = exact_factor_census(3, 101);
    for (int i = 1; i <= 3; ++i) {
        Rational target = limit_density(3, i);
        Rational err_small = abs(small.fraction(i) - target);
        Rational err_large = abs(large.fraction(i) - target);
        CHECK(err_large < err_small);
        CHECK(err_large < Rational(3, 100));
    }
}

TEST_CASE("empirical splitting is deterministic and plausible") {
    auto a = empirical_splitting(2, 11, 100, 20000, 12345);
    auto b = empirical_splitting(2, 11, 100, 20000, 12345);
    CHECK(a.counts == b.counts);
    CHECK(a.skipped == b.skipped);
    // sample_count bounds the draws; rejected tuples leave fewer usable
    CHECK(a.usable + a.skipped <= 20000);
    CHECK(a.usable + a.skipped > 18000);
    // skip fraction is near m/p
    double skip = static_cast<double>(a.skipped) / 20000.0;
    CHECK(skip < 2.0 / 11.0 + 0.05);
    // split fractions near the exact census values for p = 11
    auto census = exact_factor_census(2, 11);
    for (int i = 1; i <= 2; ++i) {
        double emp = static_cast<double>(a.counts[i]) / static_cast<double>(a.usable);
        double ref = census.fraction(i).get_d();
        CHECK(std::abs(emp - ref) < 0.1);
    }
}

TEST_CASE("census csv renders bracketing decimals") {
    auto census = exact_factor_census(2, 5);
    std::string csv = census_csv(census, 6);
    CHECK(csv.rfind("m,p,i", 0) == 0);
    CHECK(csv.find("2,5,1") != std::string::npos);
}
