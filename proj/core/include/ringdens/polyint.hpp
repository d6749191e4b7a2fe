#pragma once

#include <optional>
#include <vector>

#include "ringdens/rational.hpp"

namespace ringdens::polyint {

/// Integer polynomial a_0 + a_1 x + ... + a_n x^n, stored low-to-high with
/// a_n != 0.
struct IntPolynomial {
    std::vector<Integer> coeffs;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> c);
    static IntPolynomial from_ints(const std::vector<long>& c);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Integer height() const;
    Integer content() const;  // gcd of |coefficients|, > 0
    IntPolynomial derivative() const;
    Integer eval(const Integer& x) const;

    bool operator==(const IntPolynomial& o) const = default;
};

/// Canonical minimal-polynomial representative: primitive, positive leading
/// coefficient, irreducible over the integers.  Each representative stands
/// for its degree-many roots, so weight = degree.
struct NormalizedRep {
    IntPolynomial poly;
    int weight;
};

enum class RejectReason { zero_polynomial, degree_mismatch, reducible };

struct NormalizeResult {
    std::optional<NormalizedRep> rep;
    std::optional<RejectReason> reason;
    bool accepted() const { return rep.has_value(); }
};

/// Canonicalize a coefficient sequence (low-to-high): divide by content, flip
/// sign so the leading coefficient is positive, test irreducibility.  Total
/// function; failures are explicit rejections.
NormalizeResult normalize(const std::vector<Integer>& coeffs);

/// e(gamma) = gcd(a_1, ..., a_n): all coefficients except the constant term.
Integer e_invariant(const NormalizedRep& rep);

/// Exact discriminant via the Sylvester matrix of (f, f'), fraction-free
/// Bareiss elimination, divided by the leading coefficient with sign
/// (-1)^(n(n-1)/2).  Requires degree >= 2.
Integer discriminant(const IntPolynomial& poly);

/// Coefficient of A_(n-1)^n * A_0^(n-2) in Disc(A_n x^n + ... + A_0),
/// extracted by exact multivariate interpolation; 2 <= n <= 6.
Integer disc_monomial_coefficient(int n);

/// Irreducibility over the integers for primitive polynomials of degree >= 1.
/// Pipeline: rational-root test, cubic shortcut, mod-p certificate, exhaustive
/// factor search under a Mignotte coefficient bound.
bool is_irreducible(const IntPolynomial& poly);

struct SquareClass {
    Integer m;  // squarefree, carries the sign of the input
    Integer y;  // positive
};

/// D = m * y^2 with m squarefree.  Trial division up to cbrt then a
/// perfect-square check on the cofactor (at most two prime factors remain).
SquareClass square_class(const Integer& D);

}  // namespace ringdens::polyint
