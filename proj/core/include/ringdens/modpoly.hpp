#pragma once

#include <cstdint>
#include <vector>

namespace ringdens::modp {

/// Dense polynomial over Z/pZ, coefficients low-to-high, no trailing zeros.
/// p must fit in 32 bits so products stay in uint64.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& f);
int degree(const Poly& f);  // -1 for the zero polynomial

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly rem(Poly a, const Poly& b, std::uint64_t p);
Poly make_monic(Poly f, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);  // monic
Poly derivative(const Poly& f, std::uint64_t p);
/// Exact quotient a / b (b must divide a).
Poly quot(Poly a, const Poly& b, std::uint64_t p);
/// base^e mod m.
Poly pow_poly_mod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p);

/// One distinct-degree class of the factorization: the product of all
/// distinct irreducible factors of degree `factor_degree` appearing with
/// multiplicity `multiplicity` in the input.
struct DDFComponent {
    int multiplicity;
    int factor_degree;
    Poly product;  // monic, squarefree
};

/// Complete squarefree + distinct-degree decomposition of a monic f with
/// deg(f) < p.  The input is recovered as prod product^multiplicity.
std::vector<DDFComponent> factor_distinct(const Poly& f, std::uint64_t p);

/// Deterministic irreducibility test over Z/pZ.
bool is_irreducible(const Poly& f, std::uint64_t p);

}  // namespace ringdens::modp
