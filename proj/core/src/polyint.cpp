#include "ringdens/polyint.hpp"

#include <algorithm>
#include <stdexcept>

#include "ringdens/modpoly.hpp"
#include "ringdens/primes.hpp"

namespace ringdens::polyint {

IntPolynomial::IntPolynomial(std::vector<Integer> c) : coeffs(std::move(c)) {
    if (coeffs.empty() || coeffs.back() == 0)
        throw std::invalid_argument("IntPolynomial: leading coefficient must be nonzero");
}

IntPolynomial IntPolynomial::from_ints(const std::vector<long>& c) {
    std::vector<Integer> v(c.begin(), c.end());
    return IntPolynomial(std::move(v));
}

Integer IntPolynomial::height() const {
    Integer h = 0;
    for (const auto& a : coeffs) h = std::max(h, Integer(abs(a)));
    return h;
}

Integer IntPolynomial::content() const {
    Integer g = 0;
    for (const auto& a : coeffs) g = gcd(g, a);
    return g;
}

IntPolynomial IntPolynomial::derivative() const {
    if (degree() < 1) throw std::domain_error("derivative of a constant");
    std::vector<Integer> d(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i) d[i - 1] = coeffs[i] * Integer(static_cast<long>(i));
    return IntPolynomial(std::move(d));
}

Integer IntPolynomial::eval(const Integer& x) const {
    Integer r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
}

NormalizeResult normalize(const std::vector<Integer>& coeffs) {
    if (coeffs.empty()) return {std::nullopt, RejectReason::zero_polynomial};
    bool all_zero = std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& a) { return a == 0; });
    if (all_zero) return {std::nullopt, RejectReason::zero_polynomial};
    if (coeffs.back() == 0) return {std::nullopt, RejectReason::degree_mismatch};

    std::vector<Integer> c = coeffs;
    Integer content = 0;
    for (const auto& a : c) content = gcd(content, a);
    if (c.back() < 0) content = -content;
    for (auto& a : c) a /= content;

    IntPolynomial poly(std::move(c));
    if (poly.degree() < 1) return {std::nullopt, RejectReason::reducible};
    if (!is_irreducible(poly)) return {std::nullopt, RejectReason::reducible};
    int deg = poly.degree();
    return {NormalizedRep{std::move(poly), deg}, std::nullopt};
}

Integer e_invariant(const NormalizedRep& rep) {
    Integer g = 0;
    for (size_t i = 1; i < rep.poly.coeffs.size(); ++i) g = gcd(g, rep.poly.coeffs[i]);
    return g;
}

namespace {

/// Determinant by fraction-free Bareiss elimination.
Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    const size_t n = m.size();
    Integer prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Integer num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                Integer q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = q;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

}  // namespace

Integer discriminant(const IntPolynomial& poly) {
    const int n = poly.degree();
    if (n < 2) throw std::domain_error("discriminant: degree must be >= 2");
    IntPolynomial d = poly.derivative();

    // Sylvester matrix of (f, f'): n-1 shifted rows of f, n shifted rows of f'.
    const int dim = 2 * n - 1;
    std::vector<std::vector<Integer>> m(dim, std::vector<Integer>(dim, Integer(0)));
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j <= n; ++j) m[i][i + j] = poly.coeffs[n - j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n - 1; ++j) m[n - 1 + i][i + j] = d.coeffs[n - 1 - j];

    Integer det = bareiss_det(std::move(m));
    if (((static_cast<long>(n) * (n - 1)) / 2) % 2 == 1) det = -det;
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), det.get_mpz_t(), poly.coeffs.back().get_mpz_t());
    if (r != 0) throw std::logic_error("discriminant: leading-coefficient division not exact");
    return q;
}

namespace {

bool has_rational_root(const IntPolynomial& f) {
    // Roots p/q need p | a_0, q | a_n.  a_0 = 0 means root 0.
    const Integer& a0 = f.coeffs.front();
    const Integer& an = f.coeffs.back();
    if (a0 == 0) return true;
    auto divisors = [](const Integer& v) {
        std::vector<Integer> out;
        Integer a = abs(v);
        for (Integer d = 1; d * d <= a; ++d)
            if (a % d == 0) {
                out.push_back(d);
                if (d * d != a) out.push_back(a / d);
            }
        return out;
    };
    std::vector<Integer> ps = divisors(a0);
    std::vector<Integer> qs = divisors(an);
    for (const Integer& p : ps)
        for (const Integer& q : qs) {
            if (gcd(p, q) != 1) continue;
            // f(p/q) = 0  <=>  sum a_i p^i q^(n-i) = 0
            for (int s = 0; s < 2; ++s) {
                Integer pp = s == 0 ? p : Integer(-p);
                Integer acc = 0;
                for (int i = f.degree(); i >= 0; --i) acc = acc * pp + f.coeffs[i] * pow_int(q, f.degree() - i);
                if (acc == 0) return true;
            }
        }
    return false;
}

bool modp_certificate(const IntPolynomial& f) {
    const auto& primes = shared_sieve().primes_below(100);
    for (std::uint64_t p : primes) {
        if (f.coeffs.back() % static_cast<long>(p) == 0) continue;
        modp::Poly g(f.coeffs.size());
        for (size_t i = 0; i < f.coeffs.size(); ++i) {
            Integer r = f.coeffs[i] % static_cast<long>(p);
            if (r < 0) r += static_cast<long>(p);
            g[i] = r.get_ui();
        }
        if (modp::is_irreducible(g, p)) return true;
    }
    return false;
}

/// Mignotte-style bound on coefficients of a degree-d factor of f.
Integer factor_coeff_bound(const IntPolynomial& f, int d) {
    Integer norm_sq = 0;
    for (const auto& a : f.coeffs) norm_sq += a * a;
    Integer norm = isqrt(norm_sq) + 1;
    return (Integer(1) << d) * norm;
}

/// Does g divide f over the integers?
bool divides_exactly(const IntPolynomial& f, const std::vector<Integer>& g) {
    std::vector<Rational> r(f.coeffs.begin(), f.coeffs.end());
    const int dg = static_cast<int>(g.size()) - 1;
    Rational lead(g.back());
    for (int i = f.degree(); i >= dg; --i) {
        Rational c = r[i] / lead;
        if (c == 0) continue;
        if (c.get_den() != 1) return false;
        for (int j = 0; j <= dg; ++j) r[i - dg + j] -= c * Rational(g[j]);
    }
    for (int i = 0; i < dg; ++i)
        if (r[i] != 0) return false;
    return true;
}

/// Exhaustive search for a degree-d factor (2 <= d <= n/2), coefficients
/// bounded by the Mignotte bound, leading/constant coefficients restricted to
/// divisors of a_n / a_0.
bool has_factor_of_degree(const IntPolynomial& f, int d) {
    Integer bound = factor_coeff_bound(f, d);
    auto bounded_divisors = [&](const Integer& v) {
        std::vector<Integer> out;
        Integer a = abs(v);
        for (Integer x = 1; x * x <= a; ++x)
            if (a % x == 0) {
                if (x <= bound) out.push_back(x);
                Integer y = a / x;
                if (y != x && y <= bound) out.push_back(y);
            }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<Integer> leads = bounded_divisors(f.coeffs.back());
    std::vector<Integer> consts = bounded_divisors(f.coeffs.front());

    std::vector<Integer> g(d + 1);
    std::vector<Integer> mid(d - 1, -bound);
    for (const Integer& gl : leads) {
        g[d] = gl;
        for (const Integer& gc : consts) {
            for (int sign = 0; sign < 2; ++sign) {
                g[0] = sign == 0 ? gc : Integer(-gc);
                std::fill(mid.begin(), mid.end(), -bound);
                while (true) {
                    for (int i = 0; i < d - 1; ++i) g[i + 1] = mid[i];
                    if (divides_exactly(f, g)) return true;
                    int k = 0;
                    while (k < d - 1 && mid[k] == bound) mid[k++] = -bound;
                    if (k == d - 1) break;
                    mid[k] += 1;
                }
            }
        }
    }
    return false;
}

}  // namespace

bool is_irreducible(const IntPolynomial& poly) {
    if (poly.content() != 1) throw std::domain_error("is_irreducible: input must be primitive");
    const int n = poly.degree();
    if (n < 1) throw std::domain_error("is_irreducible: degree must be >= 1");
    if (n == 1) return true;
    if (has_rational_root(poly)) return false;
    if (n <= 3) return true;  // primitive, no rational root, degree 2 or 3
    if (modp_certificate(poly)) return true;
    for (int d = 2; d <= n / 2; ++d)
        if (has_factor_of_degree(poly, d)) return false;
    return true;
}

SquareClass square_class(const Integer& D) {
    if (D == 0) throw std::domain_error("square_class: D must be nonzero");
    Integer c = abs(D);
    Integer m = 1, y = 1;
    for (Integer d = 2; d * d * d <= c; d += (d == 2 ? 1 : 2)) {
        if (c % d != 0) continue;
        int e = 0;
        while (c % d == 0) {
            c /= d;
            ++e;
        }
        if (e % 2 == 1) m *= d;
        for (int i = 0; i < e / 2; ++i) y *= d;
    }
    // Cofactor has at most two prime factors: 1, p, p^2 or pq.
    if (c > 1) {
        if (is_perfect_square(c))
            y *= isqrt(c);
        else
            m *= c;
    }
    if (D < 0) m = -m;
    return {m, y};
}

namespace {

/// Coefficients of the Lagrange basis polynomial through nodes xs, centered
/// at node index i.
std::vector<Rational> lagrange_basis_coeffs(const std::vector<Integer>& xs, size_t i) {
    std::vector<Rational> poly = {Rational(1)};
    Rational denom(1);
    for (size_t j = 0; j < xs.size(); ++j) {
        if (j == i) continue;
        // poly *= (t - x_j)
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= poly[k] * Rational(xs[j]);
        }
        poly = std::move(next);
        denom *= Rational(xs[i] - xs[j]);
    }
    for (auto& c : poly) c /= denom;
    return poly;
}

}  // namespace

Integer disc_monomial_coefficient(int n) {
    if (n < 2 || n > 6) throw std::domain_error("disc_monomial_coefficient: need 2 <= n <= 6");
    const int deg = 2 * n - 2;  // Disc is homogeneous of this degree
    std::vector<Integer> nodes_a0, nodes_mid, nodes_lead;
    for (int v = 0; v <= deg; ++v) {
        nodes_a0.push_back(v);
        nodes_mid.push_back(v);
        nodes_lead.push_back(v + 1);  // leading coefficient must stay nonzero
    }

    // Weights extracting the target exponents per variable.
    auto weights = [&](const std::vector<Integer>& xs, int exponent) {
        std::vector<Rational> w(xs.size());
        for (size_t i = 0; i < xs.size(); ++i) w[i] = lagrange_basis_coeffs(xs, i)[exponent];
        return w;
    };
    std::vector<Rational> w0 = weights(nodes_a0, n - 2);   // A_0^(n-2)
    std::vector<Rational> wm = weights(nodes_mid, n);      // A_(n-1)^n
    std::vector<Rational> wl = weights(nodes_lead, 0);     // A_n^0

    Rational acc(0);
    for (size_t i = 0; i < nodes_a0.size(); ++i) {
        if (w0[i] == 0) continue;
        for (size_t j = 0; j < nodes_mid.size(); ++j) {
            if (wm[j] == 0) continue;
            for (size_t k = 0; k < nodes_lead.size(); ++k) {
                if (wl[k] == 0) continue;
                std::vector<Integer> c(n + 1, Integer(0));
                c[0] = nodes_a0[i];
                c[n - 1] = nodes_mid[j];
                c[n] = nodes_lead[k];
                Integer disc = discriminant(IntPolynomial(std::move(c)));
                acc += w0[i] * wm[j] * wl[k] * Rational(disc);
            }
        }
    }
    if (acc.get_den() != 1) throw std::logic_error("disc_monomial_coefficient: non-integer result");
    return acc.get_num();
}

}  // namespace ringdens::polyint
