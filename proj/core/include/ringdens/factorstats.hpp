#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ringdens/modpoly.hpp"
#include "ringdens/rational.hpp"

namespace ringdens::factorstats {

/// Monic polynomial over F_p; the census machinery requires p > deg so that
/// derivative-based squarefree decomposition sees every multiplicity.
struct ModPPoly {
    std::uint64_t p = 2;
    modp::Poly coeffs;  // low-to-high, leading residue 1

    ModPPoly(std::uint64_t p_, modp::Poly c);
    int degree() const { return modp::degree(coeffs); }
};

struct FactorProfile {
    int distinct_count = 0;
    std::vector<int> degree_multiset;  // degrees of the distinct irreducible factors, sorted
    bool squarefree = true;
};

/// Distinct irreducible factor count by squarefree decomposition plus
/// distinct-degree factorization: a degree-D component made of irreducibles
/// of degree e holds D/e of them, so no equal-degree splitting is needed.
FactorProfile factor_profile(const ModPPoly& f);

/// a_m(p) = (1/m) sum_{d|m} mu(m/d) p^d.
Integer irreducible_count(int m, std::uint64_t p);

struct CensusResult {
    int m = 0;
    std::uint64_t p = 2;
    std::map<int, std::uint64_t> counts;             // i -> count over all p^m monic
    std::map<int, std::uint64_t> squarefree_counts;  // i -> count, squarefree only
    std::uint64_t total = 0;                         // p^m
    Rational fraction(int i) const;                  // f(m,i,p)
};

/// Exhaustive census over the p^m monic polynomials of degree m.
CensusResult exact_factor_census(int m, std::uint64_t p, std::uint64_t budget = 1ull << 27);

/// sum_{lambda in P(m,i)} prod_n 1/(n^b_n b_n!); checked against the
/// Stirling-row generating polynomial, mismatch raises ConsistencyFault.
Rational limit_density(int m, int i);

/// Expected squarefree census count for distinct-factor class i:
/// sum over partitions of prod_n C(a_n(p), b_n).
Integer squarefree_census_formula(int m, std::uint64_t p, int i);

struct SplitSample {
    std::map<int, std::uint64_t> counts;  // i -> count among usable samples
    std::uint64_t usable = 0;
    std::uint64_t skipped = 0;  // p | Disc
};

/// Sample `samples` monic irreducible integer polynomials of degree m and
/// height <= H; reduce mod p and record the distinct-factor count (the
/// splitting behaviour of p in Q(alpha) by Dedekind-Kummer), skipping
/// polynomials whose discriminant p divides.
SplitSample empirical_splitting(int m, std::uint64_t p, std::int64_t H, std::uint64_t samples,
                                std::uint64_t seed);

std::string census_csv(const CensusResult& census, int digits);

}  // namespace ringdens::factorstats
