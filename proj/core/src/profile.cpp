#include "ringdens/profile.hpp"

#include <stdexcept>

#include "ringdens/quadfield.hpp"

namespace ringdens::profile {

SplittingProfile make_rational_profile() {
    SplittingProfile prof;
    prof.id = "Q";
    prof.degree = 1;
    prof.galois = true;
    prof.r = [](std::uint64_t) { return 1; };
    return prof;
}

SplittingProfile make_quadratic_profile(const Integer& m) {
    Integer d_K = quadfield::fundamental_discriminant(m);
    SplittingProfile prof;
    prof.id = "Q(sqrt(" + m.get_str() + "))";
    prof.degree = 2;
    prof.galois = true;
    prof.quadratic_m = m;
    prof.r = [d_K](std::uint64_t p) { return quadfield::splitting_type(d_K, p).r; };
    return prof;
}

namespace {

std::uint64_t euler_phi(std::uint64_t m) {
    std::uint64_t result = m;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        while (m % d == 0) m /= d;
        result -= result / d;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::uint64_t mult_order(std::uint64_t a, std::uint64_t m) {
    std::uint64_t v = a % m, ord = 1;
    while (v != 1) {
        v = v * a % m;
        if (++ord > m) throw std::logic_error("mult_order: a not invertible mod m");
    }
    return ord;
}

}  // namespace

SplittingProfile make_cyclotomic_profile(std::uint64_t m) {
    if (m < 3 || m % 4 == 2)
        throw std::domain_error("make_cyclotomic_profile: need m >= 3, m != 2 mod 4");
    std::uint64_t deg = euler_phi(m);
    SplittingProfile prof;
    prof.id = "Q(zeta_" + std::to_string(m) + ")";
    prof.degree = static_cast<int>(deg);
    prof.galois = true;
    prof.r = [m](std::uint64_t p) {
        std::uint64_t mp = m;
        while (mp % p == 0) mp /= p;
        if (mp == 1) return 1;
        return static_cast<int>(euler_phi(mp) / mult_order(p % mp, mp));
    };
    return prof;
}

SplittingProfile make_table_profile(std::string id, int degree, bool galois,
                                    std::map<std::uint64_t, int> table) {
    if (degree < 1) throw std::domain_error("make_table_profile: degree must be >= 1");
    for (auto& [p, r] : table)
        if (r < 1 || r > degree) throw std::domain_error("make_table_profile: r out of range");
    SplittingProfile prof;
    prof.id = std::move(id);
    prof.degree = degree;
    prof.galois = galois;
    prof.r = [t = std::move(table)](std::uint64_t p) {
        auto it = t.find(p);
        if (it == t.end()) throw std::domain_error("table profile: prime not in table");
        return it->second;
    };
    return prof;
}

}  // namespace ringdens::profile
