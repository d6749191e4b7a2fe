#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ringdens/rational.hpp"

namespace ringdens::exact {

struct LocalFactors {
    Rational alpha;  // (1 - p^-n) / (1 - p^-(n+1))
    Rational beta;   // p^-n (1 - 1/p) / (1 - p^-n)
};

/// Local factors at a prime p for degree n >= 2; satisfy alpha*(1+beta) = 1.
LocalFactors local_factors(std::uint64_t p, int n);

/// Bracket of prod_{p >= N} alpha_{p,n}: [1 - 1/((n-1)(N-1)^(n-1)), 1].
CertifiedInterval tail_factor(std::uint64_t N, int n);

struct ZetaRatioResult {
    CertifiedInterval interval;  // brackets zeta(n+1)/zeta(n)
    std::uint64_t cutoff;        // least N with prod_{p<N} alpha * tail within tol
};

/// Certified bracket of zeta(n+1)/zeta(n) = prod_p alpha_{p,n}, width <= tol.
ZetaRatioResult zeta_ratio_with_cutoff(int n, const Rational& tol);
CertifiedInterval zeta_ratio(int n, const Rational& tol);

/// Certified bracket of zeta(k) for integer k >= 2 by direct series summation
/// with an integral remainder bracket; width <= tol.
CertifiedInterval zeta_interval(int k, const Rational& tol);

struct Partition {
    std::vector<int> parts;                 // weakly decreasing, sum = m
    std::map<int, int> multiplicity;        // part value -> b_i
};

/// All partitions of m into exactly i parts, in decreasing lexicographic
/// order of the part vector.
std::vector<Partition> partitions_with_parts(int m, int i);

/// Coefficients of y^i (1 <= i <= m) in prod_{j=0}^{m-1}(y+j) / m!.
/// The row sums to 1.
std::map<int, Rational> stirling_density_row(int m);

}  // namespace ringdens::exact
