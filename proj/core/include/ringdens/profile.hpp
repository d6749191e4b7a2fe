#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "ringdens/rational.hpp"

namespace ringdens::profile {

/// Splitting data of a number field K: r(p) = number of primes of O_K above
/// p.  Degree-2 profiles carry the squarefree generator m of K = Q(sqrt(m))
/// so samplers can recognize coefficient vectors that generate K itself.
struct SplittingProfile {
    std::string id;
    int degree = 1;
    bool galois = true;
    std::function<int(std::uint64_t)> r;
    std::optional<Integer> quadratic_m;
};

/// K = Q: r(p) = 1.
SplittingProfile make_rational_profile();

/// K = Q(sqrt(m)), m squarefree: r(p) = 2 when p splits, else 1.
SplittingProfile make_quadratic_profile(const Integer& m);

/// K = Q(zeta_m), m >= 3, m not 2 mod 4: degree phi(m),
/// r(p) = phi(m') / ord_{m'}(p) with m' = m / p^{v_p(m)}.
SplittingProfile make_cyclotomic_profile(std::uint64_t m);

/// Explicit table profile; lookups of primes absent from the table throw.
SplittingProfile make_table_profile(std::string id, int degree, bool galois,
                                    std::map<std::uint64_t, int> table);

}  // namespace ringdens::profile
