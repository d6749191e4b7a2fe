#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ringdens/profile.hpp"
#include "ringdens/rational.hpp"

namespace ringdens::density {

using profile::SplittingProfile;

/// Truncated subset-sum table for a profile: dp brackets the coefficient of
/// z^t in prod_{p<N} (1 + z^r(p) beta_p), intervals bracket the full density
/// P[|X| = t] with the Euler-product prefix and tail folded in.
struct CoefficientTable {
    int n = 0;
    std::string profile_id;
    int t_max = 0;
    std::uint64_t N = 0;  // all primes < N absorbed
    std::vector<CertifiedInterval> dp;         // index t
    std::vector<CertifiedInterval> intervals;  // index t, brackets a_t
};

/// P[e = k] = zeta(n+1)/zeta(n) * phi(k) / k^(n+1), width <= tol.
CertifiedInterval prob_e(std::uint64_t k, int n, const Rational& tol);

/// P[O_K[gamma] cap K = O_K[1/k]] = zeta(n+1)/zeta(n) * prod_{p|k} beta_p.
CertifiedInterval prob_ring_equals(std::uint64_t k, int n, const Rational& tol);

/// P[Y under X(K, gamma)] = prod_{p in Y} alpha_p beta_p, exact; factors are
/// independent across primes so the profile plays no role in the value.
Rational prob_X_contains(const std::vector<std::uint64_t>& Y, const SplittingProfile& profile,
                         int n);

/// Certified brackets of a_t for t = 0..t_max, each of width <= tol.  The
/// prime cutoff N grows until the widths land; past prime_budget the call
/// refuses with the achieved widths in the message.
CoefficientTable coefficient_table(const SplittingProfile& profile, int n, int t_max,
                                   const Rational& tol, std::uint64_t prime_budget = 1u << 22);

/// (E, Var) of |X(K,gamma)| from the closed-form prime sums, widths <= tol.
std::pair<CertifiedInterval, CertifiedInterval> expectation_variance(
    const SplittingProfile& profile, int n, const Rational& tol,
    std::uint64_t prime_budget = 1u << 22);

struct MomentResult {
    CertifiedInterval series;         // sum_t t^s a_t
    CertifiedInterval combinatorial;  // inclusion-exclusion over subsets |Y| <= s
};

/// s-th moment of |X(K,gamma)| by two independent routes; throws
/// ConsistencyFault if the resulting intervals fail to intersect.
MomentResult moment(const SplittingProfile& profile, int n, int s, const Rational& tol,
                    std::uint64_t prime_budget = 1u << 22);

enum class Relation { greater, less, undecided };

struct Comparison {
    int t;
    int step;
    Relation relation;
    CertifiedInterval a_t;
    CertifiedInterval a_t_step;
};

struct MonotonicityReport {
    int d = 1;
    int d1 = 1;  // lcm(1..d)
    int general_threshold = 0;
    int galois_threshold = 0;  // meaningful when the profile is Galois
    bool galois = false;
    std::vector<Comparison> comparisons;  // steps 1, d, d1 for t = 0..t_max
};

/// Strict interval comparisons a_t vs a_{t+step}; undecided rows mark overlap
/// at the requested tolerance.
MonotonicityReport monotonicity_scan(const SplittingProfile& profile, int n, int t_max,
                                     const Rational& tol, std::uint64_t prime_budget = 1u << 22);

int general_threshold(int d);  // (d-1) lcm(1..d) - d(d+1)/2 + 1, clamped at 0
int galois_threshold(int d);   // d(tau(d)-1) - sigma(d) + 1, clamped at 0

/// Exact truncated subset-sum over primes < N (oracle-sized N only).
std::vector<Rational> exact_dp(const SplittingProfile& profile, int n, int t_max, std::uint64_t N);

/// Truncated b_{j,t}: elementary symmetric sums of beta over primes < N with
/// r(p) = j, t = 0..t_max.
std::vector<Rational> exact_b(const SplittingProfile& profile, int n, int j, int t_max,
                              std::uint64_t N);

/// Lambda(d,t): tuples (l_1..l_d) with sum j*l_j = t; Lambda0 keeps only
/// tuples supported on divisors of d.  Materialized for t <= 64, d <= 8.
std::vector<std::vector<int>> lambda_set(int d, int t);
std::vector<std::vector<int>> lambda0_set(int d, int t);

/// CSV: t, lo and hi as exact rationals, then outward-rounded decimals.
std::string table_csv(const CoefficientTable& table, int digits);
std::string monotonicity_csv(const MonotonicityReport& report, int digits);

/// Unasserted exploratory decay table: (t, -log a_t / (t log t)) at midpoints.
std::vector<std::pair<int, double>> exploratory_decay(const CoefficientTable& table);

}  // namespace ringdens::density
