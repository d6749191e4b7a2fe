#include "ringdens/exact.hpp"

#include <stdexcept>

#include "ringdens/errors.hpp"
#include "ringdens/primes.hpp"

namespace ringdens::exact {

namespace {
// Outward-rounding precision for long certified products/sums.  2^-160 is far
// below any tolerance we serve while keeping denominators bounded.
constexpr unsigned kRoundBits = 160;
}  // namespace

LocalFactors local_factors(std::uint64_t p, int n) {
    if (n < 2) throw std::domain_error("local_factors: n must be >= 2");
    if (!shared_sieve().is_prime(p)) throw std::domain_error("local_factors: p must be prime");
    Integer P(static_cast<unsigned long>(p));
    Integer pn = pow_int(P, static_cast<unsigned long>(n));
    Integer pn1 = pn * P;
    // alpha = (1 - p^-n)/(1 - p^-(n+1)) = p(p^n - 1)/(p^(n+1) - 1)
    Rational alpha = make_rational(P * (pn - 1), pn1 - 1);
    // beta = p^-n (1 - 1/p)/(1 - p^-n) = (p - 1)/(p(p^n - 1))
    Rational beta = make_rational(P - 1, P * (pn - 1));
    return {alpha, beta};
}

CertifiedInterval tail_factor(std::uint64_t N, int n) {
    if (N < 2) throw std::domain_error("tail_factor: N must be >= 2");
    if (n < 2) throw std::domain_error("tail_factor: n must be >= 2");
    Integer denom = Integer(n - 1) * pow_int(Integer(static_cast<unsigned long>(N - 1)),
                                             static_cast<unsigned long>(n - 1));
    Rational lo = 1 - make_rational(1, denom);
    return {lo, Rational(1)};
}

ZetaRatioResult zeta_ratio_with_cutoff(int n, const Rational& tol) {
    if (n < 2) throw std::domain_error("zeta_ratio: n must be >= 2");
    if (tol <= 0) throw std::domain_error("zeta_ratio: tol must be positive");

    PrimeSieve& sieve = shared_sieve();
    // Prefix interval for prod_{p <= q} alpha_{p,n}; starts with p = 2 so the
    // smallest accepted cutoff is N = 3.
    CertifiedInterval prefix = CertifiedInterval::point(local_factors(2, n).alpha);
    std::uint64_t q = 2;

    auto width_at = [&](std::uint64_t N) {
        CertifiedInterval total = iv_mul(prefix, tail_factor(N, n));
        return total.width();
    };

    while (true) {
        std::uint64_t p_next = sieve.next_prime(q + 1);
        if (width_at(p_next) <= tol) {
            // Least N in (q, p_next] meeting tol; width is non-increasing in N.
            std::uint64_t lo = q + 1, hi = p_next;
            while (lo < hi) {
                std::uint64_t mid = lo + (hi - lo) / 2;
                if (width_at(mid) <= tol)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            CertifiedInterval total = iv_mul(prefix, tail_factor(lo, n));
            return {total, lo};
        }
        prefix = round_outward(iv_scale(prefix, local_factors(p_next, n).alpha), kRoundBits);
        q = p_next;
    }
}

CertifiedInterval zeta_ratio(int n, const Rational& tol) {
    return zeta_ratio_with_cutoff(n, tol).interval;
}

CertifiedInterval zeta_interval(int k, const Rational& tol) {
    if (k < 2) throw std::domain_error("zeta_interval: k must be >= 2");
    if (tol <= 0) throw std::domain_error("zeta_interval: tol must be positive");
    // sum_{m >= M} m^-k is bracketed by integrals:
    //   [M^(1-k)/(k-1), (M-1)^(1-k)/(k-1)]
    CertifiedInterval partial = CertifiedInterval::point(Rational(1));  // m = 1 term
    for (std::uint64_t M = 2;; ++M) {
        Integer km1(k - 1);
        Rational tail_lo = make_rational(1, km1 * pow_int(Integer(static_cast<unsigned long>(M)),
                                                          static_cast<unsigned long>(k - 1)));
        Rational tail_hi = make_rational(1, km1 * pow_int(Integer(static_cast<unsigned long>(M - 1)),
                                                          static_cast<unsigned long>(k - 1)));
        CertifiedInterval total = iv_add(partial, CertifiedInterval(tail_lo, tail_hi));
        if (total.width() <= tol) return total;
        Rational term = make_rational(1, pow_int(Integer(static_cast<unsigned long>(M)),
                                                 static_cast<unsigned long>(k)));
        partial = round_outward(iv_add(partial, CertifiedInterval::point(term)), kRoundBits);
    }
}

namespace {

void emit_partitions(int remaining, int parts_left, int max_part, std::vector<int>& acc,
                     std::vector<Partition>& out) {
    if (parts_left == 0) {
        if (remaining != 0) return;
        Partition p;
        p.parts = acc;
        for (int v : acc) p.multiplicity[v]++;
        out.push_back(std::move(p));
        return;
    }
    // Each of the remaining parts is >= 1 and <= max_part.
    for (int v = std::min(max_part, remaining - (parts_left - 1)); v >= 1; --v) {
        if (static_cast<long long>(v) * parts_left < remaining) break;
        acc.push_back(v);
        emit_partitions(remaining - v, parts_left - 1, v, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_with_parts(int m, int i) {
    if (m < 1 || i < 1 || i > m)
        throw std::domain_error("partitions_with_parts: need 1 <= i <= m");
    std::vector<Partition> out;
    std::vector<int> acc;
    emit_partitions(m, i, m, acc, out);
    return out;
}

std::map<int, Rational> stirling_density_row(int m) {
    if (m < 1) throw std::domain_error("stirling_density_row: m must be >= 1");
    // prod_{j=0}^{m-1} (y + j): coefficients are unsigned Stirling numbers of
    // the first kind.
    std::vector<Integer> coeff(m + 1, 0);
    coeff[0] = 1;
    for (int j = 0; j < m; ++j) {
        for (int d = j + 1; d >= 1; --d) coeff[d] = coeff[d - 1] + Integer(j) * coeff[d];
        coeff[0] *= j;  // zero after the first step; y divides the product
    }
    Integer mfact = 1;
    for (int j = 2; j <= m; ++j) mfact *= j;
    std::map<int, Rational> row;
    for (int i = 1; i <= m; ++i) row[i] = make_rational(coeff[i], mfact);
    return row;
}

}  // namespace ringdens::exact
