#include "ringdens/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "ringdens/density.hpp"
#include "ringdens/errors.hpp"
#include "ringdens/exact.hpp"
#include "ringdens/factorstats.hpp"
#include "ringdens/polyint.hpp"
#include "ringdens/primes.hpp"
#include "ringdens/quadfield.hpp"
#include "ringdens/sampler.hpp"

namespace ringdens::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t euler_phi(std::uint64_t k) {
    std::uint64_t result = k;
    for (std::uint64_t d = 2; d * d <= k; ++d) {
        if (k % d) continue;
        while (k % d == 0) k /= d;
        result -= result / d;
    }
    if (k > 1) result -= result / k;
    return result;
}

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "FAILED[" << what << "] ";
        }
    }
};

CriterionResult finish(const std::string& name, Check& c, Clock::time_point t0) {
    c.detail << "(" << seconds_since(t0) << " s)";
    return {name, c.ok, c.detail.str()};
}

CriterionResult crit_local_identities() {
    auto t0 = Clock::now();
    Check c;
    for (int n = 2; n <= 6; ++n) {
        for (std::uint64_t p : shared_sieve().primes_below(1001)) {
            auto lf = exact::local_factors(p, n);
            if (lf.alpha * (1 + lf.beta) != 1) c.require(false, "alpha(1+beta)=1");
            Rational pn(pow_int(Integer(static_cast<unsigned long>(p)),
                                static_cast<unsigned long>(n)));
            if (!(lf.beta > 1 / (2 * pn) && lf.beta < 1 / pn)) c.require(false, "beta bounds");
        }
    }
    c.require(seconds_since(t0) < 5.0, "runtime < 5 s");
    return finish("1 local identities p<=1000 n=2..6", c, t0);
}

CertifiedInterval series_zeta_ratio(int num_k, int den_k) {
    Rational tol = make_rational(1, 1000000000);
    CertifiedInterval zn = exact::zeta_interval(num_k, tol);
    CertifiedInterval zd = exact::zeta_interval(den_k, tol);
    return {zn.lo / zd.hi, zn.hi / zd.lo};
}

CriterionResult crit_zeta_ratio() {
    auto t0 = Clock::now();
    Check c;
    Rational tol = make_rational(1, 1000000);
    CertifiedInterval r2 = exact::zeta_ratio(2, tol);
    c.require(r2.contains(make_rational(7307629, 10000000)), "ratio(2) brackets 0.7307629");
    c.require(r2.intersects(series_zeta_ratio(3, 2)), "ratio(2) vs series oracle");
    CertifiedInterval r3 = exact::zeta_ratio(3, tol);
    c.require(r3.intersects(series_zeta_ratio(4, 3)), "ratio(3) vs series oracle");
    c.detail << "ratio2=" << render(r2, 8) << " ";
    c.require(seconds_since(t0) < 5.0, "runtime < 5 s");
    return finish("2 zeta ratio vs series oracle", c, t0);
}

CriterionResult crit_prob_e_normalization() {
    auto t0 = Clock::now();
    Check c;
    CertifiedInterval Z = exact::zeta_ratio(2, make_rational(1, 1000000));
    Rational partial(0);
    for (std::uint64_t k = 1; k <= 1000; ++k)
        partial += make_rational(Integer(static_cast<unsigned long>(euler_phi(k))),
                                 pow_int(Integer(static_cast<unsigned long>(k)), 3));
    // sum_k phi(k)/k^3 = zeta(2)/zeta(3); the tail is that constant minus the
    // exact partial sum, bracketed through independent series evaluations.
    CertifiedInterval inv = series_zeta_ratio(2, 3);
    CertifiedInterval tail(inv.lo - partial, inv.hi - partial);
    c.require(tail.lo > 0, "tail positive");
    CertifiedInterval total = iv_add(iv_scale(Z, partial), iv_mul(Z, tail));
    c.require(total.contains(Rational(1)), "brackets 1");
    c.require(total.width() <= make_rational(1, 10000), "width <= 1e-4");
    c.detail << "total=" << render(total, 8) << " ";
    return finish("3 prob_e normalization k<=1000", c, t0);
}

CriterionResult crit_empirical_e(int threads) {
    auto t0 = Clock::now();
    Check c;
    Rational tol = make_rational(1, 1000000);
    double p1 = density::prob_e(1, 2, tol).mid().get_d();
    double p2 = density::prob_e(2, 2, tol).mid().get_d();

    sampler::EnumSpec ex;
    ex.degree = 2;
    ex.height = 300;
    auto acc = sampler::accumulate(ex, {}, {}, std::max(8, threads), threads);
    double total = static_cast<double>(acc.total_weight);
    double e1 = static_cast<double>(acc.e_histogram[1]) / total;
    double e2 = static_cast<double>(acc.e_histogram[2]) / total;
    c.require(std::abs(e1 - p1) <= 0.02, "exhaustive |e1 - prob_e(1)| <= 0.02");
    c.require(std::abs(e2 - p2) <= 0.01, "exhaustive |e2 - prob_e(2)| <= 0.01");
    double t_ex = seconds_since(t0);
    c.require(t_ex < 600.0, "exhaustive <= 10 min");

    auto t1 = Clock::now();
    sampler::EnumSpec mc;
    mc.degree = 2;
    mc.height = 100000;
    mc.mode = sampler::Mode::montecarlo;
    mc.sample_count = 1000000;
    mc.seed = 20260824;
    auto mcacc = sampler::accumulate(mc, {}, {}, std::max(8, threads), threads);
    double m1 = static_cast<double>(mcacc.e_histogram[1]) / static_cast<double>(mcacc.total_weight);
    c.require(std::abs(m1 - 0.7308) <= 0.005, "MC |e1 - 0.7308| <= 0.005");
    c.require(seconds_since(t1) < 120.0, "MC <= 2 min");
    c.detail << "ex_e1=" << e1 << " ex_e2=" << e2 << " mc_e1=" << m1 << " ";
    return finish("4 empirical e-distribution (H=300 exhaustive, MC 1e6)", c, t0);
}

CriterionResult crit_counts() {
    auto t0 = Clock::now();
    Check c;
    auto irr = sampler::count_irreducible(2, 50);
    double dev1 = std::abs(static_cast<double>(irr.count) - irr.predicted.mid().get_d()) /
                  irr.predicted.mid().get_d();
    c.require(dev1 <= 0.05, "irreducible(2,50) within 5%");
    auto cop = sampler::count_coprime_tuples(2, 100);
    double dev2 = std::abs(static_cast<double>(cop.count) - cop.predicted.mid().get_d()) /
                  cop.predicted.mid().get_d();
    c.require(dev2 <= 0.02, "coprime(2,100) within 2%");
    c.detail << "irr_dev=" << dev1 << " coprime_dev=" << dev2 << " ";
    return finish("5 exact counts vs main terms", c, t0);
}

CriterionResult crit_rational_table() {
    auto t0 = Clock::now();
    Check c;
    auto table = density::coefficient_table(profile::make_rational_profile(), 2, 15,
                                            make_rational(1, 100000));
    for (int t = 0; t < 15; ++t)
        c.require(table.intervals[static_cast<size_t>(t + 1)].strictly_below(
                      table.intervals[static_cast<size_t>(t)]),
                  "a_" + std::to_string(t) + " > a_" + std::to_string(t + 1));
    c.require(seconds_since(t0) < 60.0, "runtime < 1 min");
    c.detail << "N=" << table.N << " ";
    return finish("6 rational coefficient table strictly decreasing t=0..15", c, t0);
}

CriterionResult crit_quadratic_monotonicity() {
    auto t0 = Clock::now();
    Check c;
    Rational tol = make_rational(1, 100000);
    auto q7 = profile::make_quadratic_profile(Integer(-7));
    auto table7 = density::coefficient_table(q7, 2, 2, tol);
    c.require(table7.intervals[1].strictly_below(table7.intervals[2]), "Q(sqrt(-7)) a1 < a2");
    for (long m : {-1L, -7L, -23L}) {
        auto prof = profile::make_quadratic_profile(Integer(m));
        auto report = density::monotonicity_scan(prof, 2, 12, tol);
        for (const auto& cmp : report.comparisons) {
            if (cmp.step != 2) continue;
            c.require(cmp.relation == density::Relation::greater,
                      "m=" + std::to_string(m) + " a_" + std::to_string(cmp.t) + " > a_" +
                          std::to_string(cmp.t + 2));
        }
    }
    return finish("7 quadratic non-monotonicity and step-2 comparisons", c, t0);
}

CriterionResult crit_moments() {
    auto t0 = Clock::now();
    Check c;
    Rational tol = make_rational(1, 10000);
    std::vector<profile::SplittingProfile> profs{profile::make_rational_profile(),
                                                 profile::make_quadratic_profile(Integer(-7))};
    for (const auto& prof : profs) {
        auto [E, V] = density::expectation_variance(prof, 2, tol);
        auto m1 = density::moment(prof, 2, 1, tol);
        auto m2 = density::moment(prof, 2, 2, tol);
        c.require(E.intersects(m1.series), prof.id + " E vs sum t a_t");
        CertifiedInterval e_sq(m1.series.lo * m1.series.lo, m1.series.hi * m1.series.hi);
        CertifiedInterval var_series(m2.series.lo - e_sq.hi, m2.series.hi - e_sq.lo);
        c.require(V.intersects(var_series), prof.id + " Var vs series");
        c.require(m2.series.intersects(m2.combinatorial), prof.id + " s=2 two-method");
    }
    return finish("8 moment cross-validation (rational, Q(sqrt(-7)))", c, t0);
}

CriterionResult crit_independence() {
    auto t0 = Clock::now();
    Check c;
    auto prof = profile::make_rational_profile();
    Rational a = density::prob_X_contains({2}, prof, 2);
    Rational b = density::prob_X_contains({3}, prof, 2);
    Rational ab = density::prob_X_contains({2, 3}, prof, 2);
    c.require(a == make_rational(1, 7), "P[{2}] = 1/7");
    c.require(ab == a * b, "P[{2,3}] = P[{2}] P[{3}]");
    return finish("9 containment independence", c, t0);
}

/// Independent class-number oracle: walk b >= 0 with b = d mod 2 and count
/// divisor splittings 4ac = b^2 - d with b <= a <= c, doubling interior b.
int class_number_oracle(long d) {
    Integer D(d);
    int h = 0;
    for (Integer b = (D % 2 == 0) ? 0 : 1; b * b * 3 <= -D; b += 2) {
        Integer M4 = b * b - D;
        if (M4 % 4 != 0) continue;
        Integer M = M4 / 4;
        for (Integer a = (b == 0) ? 1 : b; a * a <= M; ++a) {
            if (a == 0 || M % a != 0) continue;
            Integer cc = M / a;
            if (b == 0 || b == a || a == cc)
                h += 1;
            else
                h += 2;
        }
    }
    return h;
}

CriterionResult crit_class_groups() {
    auto t0 = Clock::now();
    Check c;
    c.require(quadfield::reduced_forms(Integer(-23)).h == 3, "h(-23) = 3");
    c.require(quadfield::reduced_forms(Integer(-4)).h == 1, "h(-4) = 1");
    c.require(quadfield::reduced_forms(Integer(-163)).h == 1, "h(-163) = 1");
    int checked = 0;
    for (long d = -3; d >= -10000; --d) {
        if (!quadfield::is_fundamental_discriminant(Integer(d))) continue;
        ++checked;
        if (quadfield::reduced_forms(Integer(d)).h != class_number_oracle(d)) {
            c.require(false, "oracle mismatch at d=" + std::to_string(d));
            break;
        }
    }
    c.detail << "oracle_checked=" << checked << " ";
    int groups = 0;
    for (long d = -3; d >= -250; --d) {
        if (!quadfield::is_fundamental_discriminant(Integer(d))) continue;
        auto table = quadfield::reduced_forms(Integer(d));
        if (table.h > 16) continue;
        ++groups;
        table.ensure_composition();
        int n = table.h;
        int e = table.principal_index;
        for (int i = 0; i < n; ++i) {
            if (table.composition[static_cast<size_t>(e)][static_cast<size_t>(i)] != i)
                c.require(false, "identity fails d=" + std::to_string(d));
            if (table.composition[static_cast<size_t>(i)]
                                 [static_cast<size_t>(table.inverse_of(i))] != e)
                c.require(false, "inverse fails d=" + std::to_string(d));
        }
        for (int i = 0; i < n && c.ok; ++i)
            for (int j = 0; j < n; ++j) {
                if (table.composition[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                    table.composition[static_cast<size_t>(j)][static_cast<size_t>(i)])
                    c.require(false, "commutativity fails d=" + std::to_string(d));
                for (int k = 0; k < n; ++k) {
                    int ij = table.composition[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    int jk = table.composition[static_cast<size_t>(j)][static_cast<size_t>(k)];
                    if (table.composition[static_cast<size_t>(ij)][static_cast<size_t>(k)] !=
                        table.composition[static_cast<size_t>(i)][static_cast<size_t>(jk)]) {
                        c.require(false, "associativity fails d=" + std::to_string(d));
                        break;
                    }
                }
            }
    }
    c.detail << "groups_checked=" << groups << " ";
    return finish("10 class groups vs oracle; group axioms", c, t0);
}

std::vector<long> fundamental_below(long limit, int count) {
    std::vector<long> out;
    for (long d = limit - 1; static_cast<int>(out.size()) < count; --d)
        if (quadfield::is_fundamental_discriminant(Integer(d))) out.push_back(d);
    return out;
}

CriterionResult crit_case_analysis() {
    auto t0 = Clock::now();
    Check c;
    for (int t : {1, 2, 3}) {
        long limit = -4;
        for (int i = 0; i < t; ++i) limit *= 10;
        for (long d : fundamental_below(limit, 20)) {
            auto violators = quadfield::t_torsion_violators(Integer(d), t, 10);
            std::set<std::uint64_t> expected;
            for (std::uint64_t p : shared_sieve().primes_below(10)) {
                int chi = quadfield::kronecker(Integer(d), Integer(static_cast<unsigned long>(p)));
                bool in = (t % 2 == 1) ? (chi >= 0) : (chi == 1);
                if (in) expected.insert(p);
            }
            if (violators != expected)
                c.require(false, "t=" + std::to_string(t) + " d=" + std::to_string(d));
        }
    }
    return finish("11 torsion case analysis t=1,2,3 N=10", c, t0);
}

CriterionResult crit_torsion_trend() {
    auto t0 = Clock::now();
    Check c;
    int hits = 0;
    for (long d : fundamental_below(-40, 20)) {
        if (d < -1000) break;
        ++hits;
        auto violators = quadfield::t_torsion_violators(Integer(d), 1, 10);
        Rational v_prefix(1);
        for (std::uint64_t p : violators) v_prefix *= exact::local_factors(p, 2).alpha;
        Rational f_prefix(1);
        for (std::uint64_t p : shared_sieve().primes_below(10)) {
            if (quadfield::kronecker(Integer(d), Integer(static_cast<unsigned long>(p))) >= 0)
                f_prefix *= exact::local_factors(p, 2).alpha;
        }
        Rational ratio = v_prefix / f_prefix;
        if (!(ratio >= make_rational(9, 10) && ratio <= make_rational(11, 10)))
            c.require(false, "ratio out of [0.9,1.1] at d=" + std::to_string(d));
    }
    c.detail << "sampled=" << hits << " ";
    return finish("12 torsion density trend t=1 (N=10 truncation)", c, t0);
}

CriterionResult crit_censuses() {
    auto t0 = Clock::now();
    Check c;
    auto c37 = factorstats::exact_factor_census(3, 7);
    for (const auto& [i, count] : c37.squarefree_counts)
        c.require(Integer(static_cast<unsigned long>(count)) ==
                      factorstats::squarefree_census_formula(3, 7, i),
                  "squarefree marginal i=" + std::to_string(i));
    for (auto [m, p] : std::vector<std::pair<int, std::uint64_t>>{{2, 5}, {3, 7}, {3, 11}}) {
        auto census = factorstats::exact_factor_census(m, p);
        std::uint64_t sf = 0;
        for (const auto& [i, count] : census.squarefree_counts) sf += count;
        Rational frac = make_rational(Integer(static_cast<unsigned long>(sf)),
                                      Integer(static_cast<unsigned long>(census.total)));
        c.require(frac == 1 - make_rational(1, Integer(static_cast<unsigned long>(p))),
                  "squarefree fraction (m,p)=(" + std::to_string(m) + "," + std::to_string(p) + ")");
        auto it = census.squarefree_counts.find(1);
        Integer irr = it == census.squarefree_counts.end()
                          ? Integer(0)
                          : Integer(static_cast<unsigned long>(it->second));
        c.require(irr == factorstats::irreducible_count(m, p), "irreducible count matches census");
    }
    return finish("13 exact finite-field censuses", c, t0);
}

CriterionResult crit_limit_law() {
    auto t0 = Clock::now();
    Check c;
    for (int m = 1; m <= 12; ++m) {
        auto row = exact::stirling_density_row(m);
        for (int i = 1; i <= m; ++i)
            c.require(factorstats::limit_density(m, i) == row.at(i),
                      "limit_density(" + std::to_string(m) + "," + std::to_string(i) + ")");
    }
    auto census = factorstats::exact_factor_census(3, 101, 1ull << 27);
    double f = census.fraction(2).get_d();
    c.require(std::abs(f - 0.5) <= 0.03, "f(3,2,101) within 0.03 of 1/2");
    c.require(seconds_since(t0) < 60.0, "census runtime < 1 min");
    c.detail << "f(3,2,101)=" << f << " ";
    return finish("14 limit law coefficients; f(3,2,101)", c, t0);
}

CriterionResult crit_split_sampling() {
    auto t0 = Clock::now();
    Check c;
    auto sample = factorstats::empirical_splitting(2, 11, 100, 100000, 20260824);
    auto census = factorstats::exact_factor_census(2, 11);
    for (int i : {1, 2}) {
        double emp = static_cast<double>(sample.counts[i]) / static_cast<double>(sample.usable);
        double exact_f = census.fraction(i).get_d();
        c.require(std::abs(emp - exact_f) <= 0.1, "i=" + std::to_string(i) + " within 0.1");
    }
    double skip = static_cast<double>(sample.skipped) /
                  static_cast<double>(sample.usable + sample.skipped);
    c.require(skip <= 2.0 / 11 + 0.05, "skip fraction <= m/p + 0.05");
    c.detail << "skip=" << skip << " ";
    return finish("15 Dedekind-Kummer empirical splitting (2,11)", c, t0);
}

CriterionResult crit_sylvester() {
    auto t0 = Clock::now();
    Check c;
    for (int n : {2, 3, 4}) {
        Integer coeff = polyint::disc_monomial_coefficient(n);
        Integer expected = pow_int(Integer(n - 1), static_cast<unsigned long>(n - 1));
        c.require(abs(coeff) == expected, "|coeff(n=" + std::to_string(n) + ")| = (n-1)^(n-1)");
    }
    Integer d = polyint::discriminant(polyint::IntPolynomial::from_ints({1, 1, 0, 1}));
    c.require(d == -31, "disc(x^3+x+1) = -31");
    return finish("16 Sylvester discriminant checks", c, t0);
}

CriterionResult crit_determinism(int threads) {
    auto t0 = Clock::now();
    Check c;
    sampler::EnumSpec spec;
    spec.degree = 2;
    spec.height = 40;
    auto q7 = profile::make_quadratic_profile(Integer(-7));
    std::vector<Integer> classes{Integer(-7), Integer(5)};
    auto one = sampler::accumulate(spec, {q7}, classes, 1, 1);
    auto split = sampler::accumulate(spec, {q7}, classes, 8, std::max(threads, 2));
    c.require(sampler::accumulator_json(one) == sampler::accumulator_json(split),
              "8-block merge byte-identical");
    return finish("17 block split determinism", c, t0);
}

}  // namespace

int required_budget_minutes() { return 15; }

std::vector<CriterionResult> run_all(int threads, int budget_minutes) {
    if (budget_minutes < required_budget_minutes())
        throw BudgetError("acceptance: full run needs " +
                              std::to_string(required_budget_minutes()) + " budget minutes",
                          static_cast<std::uint64_t>(required_budget_minutes()));
    std::vector<CriterionResult> results;
    results.push_back(crit_local_identities());
    results.push_back(crit_zeta_ratio());
    results.push_back(crit_prob_e_normalization());
    results.push_back(crit_empirical_e(threads));
    results.push_back(crit_counts());
    results.push_back(crit_rational_table());
    results.push_back(crit_quadratic_monotonicity());
    results.push_back(crit_moments());
    results.push_back(crit_independence());
    results.push_back(crit_class_groups());
    results.push_back(crit_case_analysis());
    results.push_back(crit_torsion_trend());
    results.push_back(crit_censuses());
    results.push_back(crit_limit_law());
    results.push_back(crit_split_sampling());
    results.push_back(crit_sylvester());
    results.push_back(crit_determinism(threads));
    return results;
}

}  // namespace ringdens::acceptance
