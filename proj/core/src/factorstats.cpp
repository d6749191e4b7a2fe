#include "ringdens/factorstats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ringdens/errors.hpp"
#include "ringdens/exact.hpp"
#include "ringdens/primes.hpp"
#include "ringdens/sampler.hpp"

namespace ringdens::factorstats {

ModPPoly::ModPPoly(std::uint64_t p_, modp::Poly c) : p(p_), coeffs(std::move(c)) {
    if (!shared_sieve().is_prime(p)) throw std::domain_error("ModPPoly: p must be prime");
    for (auto& v : coeffs) v %= p;
    modp::trim(coeffs);
    if (coeffs.empty() || coeffs.back() != 1)
        throw std::domain_error("ModPPoly: polynomial must be monic");
    if (static_cast<std::uint64_t>(degree()) >= p)
        throw std::domain_error("ModPPoly: requires p > deg");
}

FactorProfile factor_profile(const ModPPoly& f) {
    if (f.degree() < 1) throw std::domain_error("factor_profile: degree >= 1");
    FactorProfile out;
    for (const auto& comp : modp::factor_distinct(f.coeffs, f.p)) {
        int cnt = modp::degree(comp.product) / comp.factor_degree;
        out.distinct_count += cnt;
        for (int i = 0; i < cnt; ++i) out.degree_multiset.push_back(comp.factor_degree);
        if (comp.multiplicity > 1) out.squarefree = false;
    }
    std::sort(out.degree_multiset.begin(), out.degree_multiset.end());
    return out;
}

namespace {

int moebius(int n) {
    int mu = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        n /= d;
        if (n % d == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

Integer irreducible_count(int m, std::uint64_t p) {
    if (m < 1 || !shared_sieve().is_prime(p)) throw std::domain_error("irreducible_count: m >= 1, p prime");
    Integer sum(0);
    for (int d = 1; d <= m; ++d) {
        if (m % d) continue;
        sum += moebius(m / d) * pow_int(Integer(static_cast<unsigned long>(p)),
                                        static_cast<unsigned long>(d));
    }
    return sum / m;
}

Rational CensusResult::fraction(int i) const {
    auto it = counts.find(i);
    Integer num = it == counts.end() ? Integer(0) : Integer(static_cast<unsigned long>(it->second));
    return make_rational(num, Integer(static_cast<unsigned long>(total)));
}

CensusResult exact_factor_census(int m, std::uint64_t p, std::uint64_t budget) {
    if (m < 1 || !shared_sieve().is_prime(p)) throw std::domain_error("exact_factor_census: m >= 1, p prime");
    if (static_cast<std::uint64_t>(m) >= p)
        throw std::domain_error("exact_factor_census: requires p > m");
    double size = std::pow(static_cast<double>(p), m);
    if (size > static_cast<double>(budget))
        throw BudgetError("exact_factor_census: p^m exceeds budget",
                          size > 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(size));

    CensusResult out;
    out.m = m;
    out.p = p;
    modp::Poly f(static_cast<size_t>(m) + 1, 0);
    f[static_cast<size_t>(m)] = 1;
    std::uint64_t total = 0;
    while (true) {
        FactorProfile prof = factor_profile(ModPPoly(p, f));
        ++out.counts[prof.distinct_count];
        if (prof.squarefree) ++out.squarefree_counts[prof.distinct_count];
        ++total;
        int i = 0;
        while (i < m && f[static_cast<size_t>(i)] == p - 1) {
            f[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i >= m) break;
        ++f[static_cast<size_t>(i)];
        f[static_cast<size_t>(m)] = 1;  // trim inside factorization never sees it drop
    }
    out.total = total;
    return out;
}

Rational limit_density(int m, int i) {
    if (i < 1 || i > m || m > 12) throw std::domain_error("limit_density: 1 <= i <= m <= 12");
    Rational sum(0);
    for (const auto& part : exact::partitions_with_parts(m, i)) {
        Rational term(1);
        for (const auto& [n, b] : part.multiplicity) {
            Integer den = pow_int(Integer(n), static_cast<unsigned long>(b));
            Integer fact(1);
            for (int j = 2; j <= b; ++j) fact *= j;
            term /= Rational(den * fact);
        }
        sum += term;
    }
    auto row = exact::stirling_density_row(m);
    if (row.at(i) != sum)
        throw ConsistencyFault("limit_density: partition sum disagrees with Stirling row");
    return sum;
}

Integer squarefree_census_formula(int m, std::uint64_t p, int i) {
    Integer sum(0);
    for (const auto& part : exact::partitions_with_parts(m, i)) {
        Integer term(1);
        for (const auto& [n, b] : part.multiplicity) {
            Integer a = irreducible_count(n, p);
            Integer binom;
            if (a < b) {
                binom = 0;
            } else {
                mpz_bin_ui(binom.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(b));
            }
            term *= binom;
        }
        sum += term;
    }
    return sum;
}

SplitSample empirical_splitting(int m, std::uint64_t p, std::int64_t H, std::uint64_t samples,
                                std::uint64_t seed) {
    if (static_cast<std::uint64_t>(m) >= p)
        throw std::domain_error("empirical_splitting: requires p > m");
    sampler::EnumSpec spec;
    spec.degree = m;
    spec.height = H;
    spec.mode = sampler::Mode::montecarlo;
    spec.sample_count = samples;
    spec.seed = seed;
    spec.monic_only = true;
    SplitSample out;
    sampler::mc_sample(spec, [&](const polyint::NormalizedRep& rep) {
        modp::Poly f(rep.poly.coeffs.size());
        for (size_t i = 0; i < f.size(); ++i) {
            Integer r = rep.poly.coeffs[i] % Integer(static_cast<unsigned long>(p));
            if (r < 0) r += Integer(static_cast<unsigned long>(p));
            f[i] = r.get_ui();
        }
        FactorProfile prof = factor_profile(ModPPoly(p, f));
        if (!prof.squarefree) {
            ++out.skipped;  // p | Disc: Dedekind-Kummer does not apply
            return;
        }
        ++out.counts[prof.distinct_count];
        ++out.usable;
    });
    return out;
}

std::string census_csv(const CensusResult& census, int digits) {
    std::ostringstream out;
    out << "m,p,i,count,squarefree_count,fraction_lo,fraction_hi\n";
    for (const auto& [i, count] : census.counts) {
        Rational frac = census.fraction(i);
        auto sq = census.squarefree_counts.find(i);
        out << census.m << "," << census.p << "," << i << "," << count << ","
            << (sq == census.squarefree_counts.end() ? 0 : sq->second) << ","
            << decimal_lower(frac, digits) << "," << decimal_upper(frac, digits) << "\n";
    }
    return out.str();
}

}  // namespace ringdens::factorstats
