#include "ringdens/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ringdens/errors.hpp"
#include "ringdens/exact.hpp"
#include "ringdens/primes.hpp"

namespace ringdens::density {

namespace {

constexpr unsigned kBits = 160;

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

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t k) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= k; ++d) {
        if (k % d) continue;
        out.push_back(d);
        while (k % d == 0) k /= d;
    }
    if (k > 1) out.push_back(k);
    return out;
}

/// Upper bound for sum_{m >= N} m^-n, hence for sum_{p >= N} beta_p.
Rational tail_mass_hi(std::uint64_t N, int n) {
    if (N < 2) throw std::domain_error("tail_mass_hi: N >= 2");
    return make_rational(1, Integer(n - 1) * pow_int(Integer(static_cast<unsigned long>(N - 1)),
                                                     static_cast<unsigned long>(n - 1)));
}

Rational rational_pow(const Rational& b, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

Integer factorial(int k) {
    Integer f(1);
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/// Incremental truncated-product state: C brackets prod_{p<next} alpha, dp[t]
/// brackets the z^t coefficient of prod_{p<next} (1 + z^r(p) beta_p).
struct Engine {
    const SplittingProfile& prof;
    int n;
    int t_max;
    CertifiedInterval C = CertifiedInterval::point(Rational(1));
    std::vector<CertifiedInterval> dp;
    std::uint64_t next = 2;

    Engine(const SplittingProfile& p, int n_, int t_max_) : prof(p), n(n_), t_max(t_max_) {
        dp.assign(static_cast<size_t>(t_max) + 1, CertifiedInterval::point(Rational(0)));
        dp[0] = CertifiedInterval::point(Rational(1));
    }

    void absorb_below(std::uint64_t N) {
        if (N <= next) return;
        for (std::uint64_t p : shared_sieve().primes_below(N)) {
            if (p < next) continue;
            auto lf = exact::local_factors(p, n);
            int r = prof.r(p);
            C = round_outward(iv_scale(C, lf.alpha), kBits);
            for (int t = t_max; t >= r; --t)
                dp[static_cast<size_t>(t)] = round_outward(
                    iv_add(dp[static_cast<size_t>(t)],
                           iv_scale(dp[static_cast<size_t>(t - r)], lf.beta)),
                    kBits);
        }
        next = N;
    }

    /// Brackets of a_t at the current cutoff.  The tail contribution to level
    /// t is split off per t: a subset of tail primes with total r-weight s has
    /// at least ceil(s/d) members, so its beta-mass is at most
    /// S^ceil(s/d)/ceil(s/d)! / (1-S) with S = sum of beta over tail primes.
    std::vector<CertifiedInterval> intervals() const {
        Rational S = tail_mass_hi(next, n);
        std::vector<CertifiedInterval> out(static_cast<size_t>(t_max) + 1,
                                           CertifiedInterval(Rational(0), Rational(1)));
        if (S >= 1) return out;
        int d = prof.degree;
        Rational inv1mS = Rational(1) / (Rational(1) - S);
        std::vector<Rational> e(static_cast<size_t>(t_max) + 1, Rational(0));
        for (int s = 1; s <= t_max; ++s) {
            int k = (s + d - 1) / d;
            e[static_cast<size_t>(s)] = rational_pow(S, k) / Rational(factorial(k)) * inv1mS;
        }
        Rational tail_lo = Rational(1) - S;
        for (int t = 0; t <= t_max; ++t) {
            Rational lo = C.lo * tail_lo * dp[static_cast<size_t>(t)].lo;
            if (lo < 0) lo = 0;
            Rational mass = dp[static_cast<size_t>(t)].hi;
            for (int s = 1; s <= t; ++s)
                mass += e[static_cast<size_t>(s)] * dp[static_cast<size_t>(t - s)].hi;
            Rational hi = C.hi * mass;
            if (hi > 1) hi = 1;
            if (lo > hi) lo = hi;
            out[static_cast<size_t>(t)] = CertifiedInterval(lo, hi);
        }
        return out;
    }
};

[[noreturn]] void refuse(const std::string& op, std::uint64_t budget,
                         const std::vector<CertifiedInterval>& ivs, const Rational& tol) {
    Rational worst(0);
    for (const auto& iv : ivs) worst = std::max(worst, iv.width());
    std::ostringstream msg;
    msg << op << ": tolerance " << tol.get_str() << " not reached within prime budget " << budget
        << "; worst achieved width " << worst.get_d();
    double scale = tol > 0 ? worst.get_d() / tol.get_d() : 2.0;
    std::uint64_t required =
        scale > 1e12 ? UINT64_MAX : static_cast<std::uint64_t>(budget * std::max(2.0, scale));
    throw BudgetError(msg.str(), required);
}

}  // namespace

CertifiedInterval prob_e(std::uint64_t k, int n, const Rational& tol) {
    if (k < 1 || n < 2 || tol <= 0) throw std::domain_error("prob_e: need k >= 1, n >= 2, tol > 0");
    Rational factor = make_rational(Integer(static_cast<unsigned long>(euler_phi(k))),
                                    pow_int(Integer(static_cast<unsigned long>(k)),
                                            static_cast<unsigned long>(n + 1)));
    return iv_scale(exact::zeta_ratio(n, tol), factor);
}

CertifiedInterval prob_ring_equals(std::uint64_t k, int n, const Rational& tol) {
    if (k < 1 || n < 2 || tol <= 0)
        throw std::domain_error("prob_ring_equals: need k >= 1, n >= 2, tol > 0");
    Rational factor(1);
    for (std::uint64_t p : distinct_prime_factors(k)) factor *= exact::local_factors(p, n).beta;
    return iv_scale(exact::zeta_ratio(n, tol), factor);
}

Rational prob_X_contains(const std::vector<std::uint64_t>& Y, const SplittingProfile& profile,
                         int n) {
    (void)profile;  // the containment probability factors over rational primes
    std::set<std::uint64_t> seen;
    Rational r(1);
    for (std::uint64_t p : Y) {
        if (!seen.insert(p).second) throw std::domain_error("prob_X_contains: repeated prime");
        auto lf = exact::local_factors(p, n);
        r *= lf.alpha * lf.beta;
    }
    return r;
}

CoefficientTable coefficient_table(const SplittingProfile& profile, int n, int t_max,
                                   const Rational& tol, std::uint64_t prime_budget) {
    if (t_max < 0 || t_max > 64) throw std::domain_error("coefficient_table: t_max in [0, 64]");
    if (tol <= 0) throw std::domain_error("coefficient_table: tol > 0");
    Engine eng(profile, n, t_max);
    std::uint64_t N = 32;
    while (true) {
        eng.absorb_below(N);
        auto ivs = eng.intervals();
        Rational worst(0);
        for (const auto& iv : ivs) worst = std::max(worst, iv.width());
        if (worst <= tol) {
            CoefficientTable table;
            table.n = n;
            table.profile_id = profile.id;
            table.t_max = t_max;
            table.N = eng.next;
            table.dp = eng.dp;
            table.intervals = std::move(ivs);
            return table;
        }
        if (N >= prime_budget) refuse("coefficient_table", prime_budget, ivs, tol);
        N = std::min<std::uint64_t>(N * 2, prime_budget);
    }
}

std::pair<CertifiedInterval, CertifiedInterval> expectation_variance(
    const SplittingProfile& profile, int n, const Rational& tol, std::uint64_t prime_budget) {
    if (tol <= 0) throw std::domain_error("expectation_variance: tol > 0");
    int d = profile.degree;
    CertifiedInterval e_acc = CertifiedInterval::point(Rational(0));
    CertifiedInterval v_acc = e_acc;
    std::uint64_t next = 2, N = 32;
    while (true) {
        for (std::uint64_t p : shared_sieve().primes_below(N)) {
            if (p < next) continue;
            auto lf = exact::local_factors(p, n);
            Rational ab = lf.alpha * lf.beta;
            int r = profile.r(p);
            e_acc = round_outward(iv_add(e_acc, CertifiedInterval::point(ab * r)), kBits);
            v_acc = round_outward(
                iv_add(v_acc, CertifiedInterval::point(ab * (1 - ab) * r * r)), kBits);
        }
        next = N;
        Rational S = tail_mass_hi(next, n);
        CertifiedInterval e_iv = iv_add(e_acc, CertifiedInterval(Rational(0), d * S));
        CertifiedInterval v_iv = iv_add(v_acc, CertifiedInterval(Rational(0), d * d * S));
        if (e_iv.width() <= tol && v_iv.width() <= tol) return {e_iv, v_iv};
        if (N >= prime_budget) refuse("expectation_variance", prime_budget, {e_iv, v_iv}, tol);
        N = std::min<std::uint64_t>(N * 2, prime_budget);
    }
}

namespace {

/// Upper bound for sum over all primes of beta (S < 1 for n >= 2).
Rational beta_mass_hi(const int n) {
    Rational S(0);
    for (std::uint64_t p : shared_sieve().primes_below(1024)) S += exact::local_factors(p, n).beta;
    S += tail_mass_hi(1024, n);
    if (S >= 1) throw std::logic_error("beta_mass_hi: mass bound >= 1");
    return S;
}

/// Upper bound for sum_{t > T} t^s [z^t] prod_p (1 + z^r beta): subsets of
/// weight t have >= ceil(t/d) primes, so grouping by k = ceil(t/d) the sum is
/// at most d/(1-S) * sum_{k >= kmin} (dk)^s S^k / k!.
Rational series_tail_hi(int T, int s, int d, const Rational& S) {
    Rational inv1mS = Rational(1) / (Rational(1) - S);
    int kmin = (T + 1 + d - 1) / d;
    auto g = [&](int k) -> Rational {
        return rational_pow(Rational(d) * k, s) * rational_pow(S, k) / Rational(factorial(k));
    };
    int K = std::max(kmin + 1, 40);
    Rational sum(0);
    for (int k = kmin; k <= K; ++k) sum += g(k);
    // past K the term ratio ((k+1)/k)^s S/(k+1) stays below 1/2
    Rational ratio = rational_pow(make_rational(K + 2, K + 1), s) * S / Rational(K + 2);
    if (ratio > make_rational(1, 2)) throw std::logic_error("series_tail_hi: ratio check failed");
    sum += 2 * g(K + 1);
    return Rational(d) * inv1mS * sum;
}

/// c_s(mu) for a multiset mu with mu[u] primes of r = u: the inclusion-
/// exclusion weight sum_{A <= mu} (-1)^{|mu|-|A|} binom(mu,A) (sum u a_u)^s.
/// Equals the surjection-weighted count, hence nonnegative.
Integer subset_weight(const std::vector<int>& mu, int s) {
    int d = static_cast<int>(mu.size()) - 1;
    int j = 0;
    for (int u = 1; u <= d; ++u) j += mu[static_cast<size_t>(u)];
    Integer total(0);
    std::vector<int> a(mu.size(), 0);
    while (true) {
        int cnt = 0;
        Integer weight(0);
        Integer binom(1);
        for (int u = 1; u <= d; ++u) {
            cnt += a[static_cast<size_t>(u)];
            weight += Integer(u) * a[static_cast<size_t>(u)];
            Integer b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(mu[static_cast<size_t>(u)]),
                         static_cast<unsigned long>(a[static_cast<size_t>(u)]));
            binom *= b;
        }
        Integer term = binom * pow_int(weight, static_cast<unsigned long>(s));
        total += ((j - cnt) % 2 == 0) ? term : -term;
        int u = 1;
        while (u <= d && a[static_cast<size_t>(u)] == mu[static_cast<size_t>(u)]) {
            a[static_cast<size_t>(u)] = 0;
            ++u;
        }
        if (u > d) break;
        ++a[static_cast<size_t>(u)];
    }
    return total;
}

void enumerate_multisets(int d, int s, int u, int remaining, std::vector<int>& mu,
                         const std::function<void(const std::vector<int>&)>& visit) {
    if (u > d) {
        int j = 0;
        for (int v = 1; v <= d; ++v) j += mu[static_cast<size_t>(v)];
        if (j >= 1) visit(mu);
        return;
    }
    for (int m = 0; m <= remaining; ++m) {
        mu[static_cast<size_t>(u)] = m;
        enumerate_multisets(d, s, u + 1, remaining - m, mu, visit);
    }
    mu[static_cast<size_t>(u)] = 0;
}

CertifiedInterval moment_series(const SplittingProfile& profile, int n, int s, const Rational& tol,
                                std::uint64_t prime_budget) {
    int d = profile.degree;
    Rational S_all = beta_mass_hi(n);
    int T = 8;
    while (series_tail_hi(T, s, d, S_all) > tol / 4) {
        T += 4;
        if (T > 200) throw BudgetError("moment: series truncation did not converge", UINT64_MAX);
    }
    Rational tail = series_tail_hi(T, s, d, S_all);
    Engine eng(profile, n, T);
    std::uint64_t N = 32;
    while (true) {
        eng.absorb_below(N);
        auto ivs = eng.intervals();
        CertifiedInterval sum = CertifiedInterval::point(Rational(0));
        for (int t = 1; t <= T; ++t)
            sum = iv_add(sum, iv_scale(ivs[static_cast<size_t>(t)],
                                       Rational(pow_int(Integer(t), static_cast<unsigned long>(s)))));
        if (sum.width() <= tol / 2)
            return iv_add(sum, CertifiedInterval(Rational(0), tail));
        if (N >= prime_budget) refuse("moment (series)", prime_budget, {sum}, tol);
        N = std::min<std::uint64_t>(N * 2, prime_budget);
    }
}

CertifiedInterval moment_combinatorial(const SplittingProfile& profile, int n, int s,
                                       const Rational& tol, std::uint64_t prime_budget) {
    int d = profile.degree;
    Rational S_all = beta_mass_hi(n);
    Rational P_hi = Rational(1) / (Rational(1) - S_all);  // prod (1 + beta) <= e^S <= 1/(1-S)

    std::vector<std::vector<int>> multisets;
    std::vector<Integer> weights;
    Integer B(0);
    std::vector<int> mu(static_cast<size_t>(d) + 1, 0);
    enumerate_multisets(d, s, 1, s, mu, [&](const std::vector<int>& m) {
        Integer c = subset_weight(m, s);
        if (c < 0) throw std::logic_error("moment: negative surjection weight");
        if (c == 0) return;
        multisets.push_back(m);
        weights.push_back(c);
        B = std::max(B, c);
    });

    // e[u][k]: elementary symmetric sums of alpha*beta over primes with r = u
    std::vector<std::vector<CertifiedInterval>> e(
        static_cast<size_t>(d) + 1,
        std::vector<CertifiedInterval>(static_cast<size_t>(s) + 1,
                                       CertifiedInterval::point(Rational(0))));
    for (int u = 1; u <= d; ++u) e[static_cast<size_t>(u)][0] = CertifiedInterval::point(Rational(1));

    std::uint64_t next = 2, N = 32;
    while (true) {
        for (std::uint64_t p : shared_sieve().primes_below(N)) {
            if (p < next) continue;
            auto lf = exact::local_factors(p, n);
            Rational ab = lf.alpha * lf.beta;
            int u = profile.r(p);
            auto& eu = e[static_cast<size_t>(u)];
            for (int k = s; k >= 1; --k)
                eu[static_cast<size_t>(k)] = round_outward(
                    iv_add(eu[static_cast<size_t>(k)], iv_scale(eu[static_cast<size_t>(k - 1)], ab)),
                    kBits);
        }
        next = N;
        CertifiedInterval main = CertifiedInterval::point(Rational(0));
        for (size_t i = 0; i < multisets.size(); ++i) {
            CertifiedInterval prod = CertifiedInterval::point(Rational(weights[i]));
            for (int u = 1; u <= d; ++u) {
                int k = multisets[i][static_cast<size_t>(u)];
                if (k > 0) prod = iv_mul(prod, e[static_cast<size_t>(u)][static_cast<size_t>(k)]);
            }
            main = iv_add(main, prod);
        }
        Rational eps = Rational(B) * tail_mass_hi(next, n) * P_hi;
        if (main.width() <= tol / 2 && eps <= tol / 2)
            return iv_add(main, CertifiedInterval(Rational(0), eps));
        if (N >= prime_budget) refuse("moment (combinatorial)", prime_budget, {main}, tol);
        N = std::min<std::uint64_t>(N * 2, prime_budget);
    }
}

}  // namespace

MomentResult moment(const SplittingProfile& profile, int n, int s, const Rational& tol,
                    std::uint64_t prime_budget) {
    if (s < 1 || s > 4) throw std::domain_error("moment: s in [1, 4]");
    if (tol <= 0) throw std::domain_error("moment: tol > 0");
    MomentResult result{moment_series(profile, n, s, tol, prime_budget),
                        moment_combinatorial(profile, n, s, tol, prime_budget)};
    if (!result.series.intersects(result.combinatorial))
        throw ConsistencyFault("moment: series and combinatorial intervals are disjoint");
    return result;
}

namespace {

int lcm_up_to(int d) {
    int l = 1;
    for (int j = 2; j <= d; ++j) l = std::lcm(l, j);
    return l;
}

int divisor_count(int d) {
    int c = 0;
    for (int j = 1; j <= d; ++j)
        if (d % j == 0) ++c;
    return c;
}

int divisor_sum(int d) {
    int c = 0;
    for (int j = 1; j <= d; ++j)
        if (d % j == 0) c += j;
    return c;
}

}  // namespace

int general_threshold(int d) {
    int t = (d - 1) * lcm_up_to(d) - d * (d + 1) / 2 + 1;
    return std::max(t, 0);
}

int galois_threshold(int d) {
    int t = d * (divisor_count(d) - 1) - divisor_sum(d) + 1;
    return std::max(t, 0);
}

MonotonicityReport monotonicity_scan(const SplittingProfile& profile, int n, int t_max,
                                     const Rational& tol, std::uint64_t prime_budget) {
    MonotonicityReport report;
    report.d = profile.degree;
    report.d1 = lcm_up_to(profile.degree);
    report.general_threshold = general_threshold(profile.degree);
    report.galois_threshold = galois_threshold(profile.degree);
    report.galois = profile.galois;

    CoefficientTable table =
        coefficient_table(profile, n, t_max + report.d1, tol, prime_budget);
    std::set<int> steps{1, report.d1};
    if (profile.galois) steps.insert(report.d);
    for (int step : steps) {
        for (int t = 0; t <= t_max; ++t) {
            const auto& a = table.intervals[static_cast<size_t>(t)];
            const auto& b = table.intervals[static_cast<size_t>(t + step)];
            Relation rel = Relation::undecided;
            if (b.strictly_below(a)) rel = Relation::greater;
            else if (a.strictly_below(b)) rel = Relation::less;
            report.comparisons.push_back({t, step, rel, a, b});
        }
    }
    return report;
}

std::vector<Rational> exact_dp(const SplittingProfile& profile, int n, int t_max, std::uint64_t N) {
    std::vector<Rational> dp(static_cast<size_t>(t_max) + 1, Rational(0));
    dp[0] = 1;
    for (std::uint64_t p : shared_sieve().primes_below(N)) {
        Rational beta = exact::local_factors(p, n).beta;
        int r = profile.r(p);
        for (int t = t_max; t >= r; --t)
            dp[static_cast<size_t>(t)] += dp[static_cast<size_t>(t - r)] * beta;
    }
    return dp;
}

std::vector<Rational> exact_b(const SplittingProfile& profile, int n, int j, int t_max,
                              std::uint64_t N) {
    std::vector<Rational> b(static_cast<size_t>(t_max) + 1, Rational(0));
    b[0] = 1;
    for (std::uint64_t p : shared_sieve().primes_below(N)) {
        if (profile.r(p) != j) continue;
        Rational beta = exact::local_factors(p, n).beta;
        for (int t = t_max; t >= 1; --t)
            b[static_cast<size_t>(t)] += b[static_cast<size_t>(t - 1)] * beta;
    }
    return b;
}

namespace {

void lambda_rec(int d, int t, int j, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (j > d) {
        if (t == 0) out.push_back(cur);
        return;
    }
    for (int l = 0; l * j <= t; ++l) {
        cur[static_cast<size_t>(j - 1)] = l;
        lambda_rec(d, t - l * j, j + 1, cur, out);
    }
    cur[static_cast<size_t>(j - 1)] = 0;
}

}  // namespace

std::vector<std::vector<int>> lambda_set(int d, int t) {
    if (d < 1 || d > 8 || t < 0 || t > 64) throw std::domain_error("lambda_set: d <= 8, t <= 64");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<size_t>(d), 0);
    lambda_rec(d, t, 1, cur, out);
    return out;
}

std::vector<std::vector<int>> lambda0_set(int d, int t) {
    std::vector<std::vector<int>> out;
    for (auto& l : lambda_set(d, t)) {
        bool ok = true;
        for (int j = 1; j <= d; ++j)
            if (l[static_cast<size_t>(j - 1)] != 0 && d % j != 0) ok = false;
        if (ok) out.push_back(l);
    }
    return out;
}

std::string table_csv(const CoefficientTable& table, int digits) {
    std::ostringstream out;
    out << "t,lo,hi,lo_dec,hi_dec\n";
    for (int t = 0; t <= table.t_max; ++t) {
        const auto& iv = table.intervals[static_cast<size_t>(t)];
        out << t << "," << iv.lo.get_str() << "," << iv.hi.get_str() << ","
            << decimal_lower(iv.lo, digits) << "," << decimal_upper(iv.hi, digits) << "\n";
    }
    return out.str();
}

std::string monotonicity_csv(const MonotonicityReport& report, int digits) {
    std::ostringstream out;
    out << "t,step,relation,a_t_lo,a_t_hi,a_ts_lo,a_ts_hi,"
           "a_t_lo_dec,a_t_hi_dec,a_ts_lo_dec,a_ts_hi_dec\n";
    for (const auto& c : report.comparisons) {
        const char* rel = c.relation == Relation::greater   ? "greater"
                          : c.relation == Relation::less    ? "less"
                                                            : "undecided";
        out << c.t << "," << c.step << "," << rel << "," << c.a_t.lo << "," << c.a_t.hi << ","
            << c.a_t_step.lo << "," << c.a_t_step.hi << "," << decimal_lower(c.a_t.lo, digits)
            << "," << decimal_upper(c.a_t.hi, digits) << ","
            << decimal_lower(c.a_t_step.lo, digits) << "," << decimal_upper(c.a_t_step.hi, digits)
            << "\n";
    }
    return out.str();
}

std::vector<std::pair<int, double>> exploratory_decay(const CoefficientTable& table) {
    std::vector<std::pair<int, double>> out;
    for (int t = 2; t <= table.t_max; ++t) {
        double mid = table.intervals[static_cast<size_t>(t)].mid().get_d();
        if (mid <= 0) continue;
        out.emplace_back(t, -std::log(mid) / (t * std::log(t)));
    }
    return out;
}

}  // namespace ringdens::density
