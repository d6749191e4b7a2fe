#include "ringdens/quadfield.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "ringdens/errors.hpp"
#include "ringdens/exact.hpp"
#include "ringdens/primes.hpp"

namespace ringdens::quadfield {

int kronecker(const Integer& a, const Integer& m) {
    if (m < 1) throw std::domain_error("kronecker: m must be positive");
    return mpz_kronecker(a.get_mpz_t(), m.get_mpz_t());
}

namespace {

bool is_squarefree(const Integer& m) {
    Integer a = abs(m);
    if (a == 0) return false;
    for (Integer d = 2; d * d <= a; ++d) {
        int e = 0;
        while (a % d == 0) {
            a /= d;
            if (++e >= 2) return false;
        }
    }
    return true;
}

}  // namespace

Integer fundamental_discriminant(const Integer& m) {
    if (m == 0 || m == 1) throw std::domain_error("fundamental_discriminant: m must be != 0, 1");
    if (!is_squarefree(m)) throw std::domain_error("fundamental_discriminant: m must be squarefree");
    Integer r = m % 4;
    if (r < 0) r += 4;
    return r == 1 ? m : Integer(4 * m);
}

bool is_fundamental_discriminant(const Integer& d) {
    if (d == 0 || d == 1) return false;
    Integer r = d % 4;
    if (r < 0) r += 4;
    if (r == 1) return is_squarefree(d);
    if (r != 0) return false;
    Integer m = d / 4;
    Integer rm = m % 4;
    if (rm < 0) rm += 4;
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

Splitting splitting_type(const Integer& d_K, std::uint64_t p) {
    if (!is_fundamental_discriminant(d_K))
        throw std::domain_error("splitting_type: d_K must be a fundamental discriminant");
    int chi = kronecker(d_K, Integer(static_cast<unsigned long>(p)));
    if (chi == 1) return {SplitType::split, 2};
    if (chi == 0) return {SplitType::ramified, 1};
    return {SplitType::inert, 1};
}

bool is_reduced(const QuadraticForm& f) {
    Integer ab = abs(f.b);
    if (!(ab <= f.a && f.a <= f.c)) return false;
    if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
    return f.a > 0;
}

QuadraticForm reduce(QuadraticForm f) {
    if (f.discriminant() >= 0) throw std::domain_error("reduce: discriminant must be negative");
    if (f.a < 0) throw std::domain_error("reduce: a must be positive for definite forms");
    while (true) {
        // Translate b into (-a, a].
        if (f.b > f.a || f.b <= -f.a) {
            Integer two_a = 2 * f.a;
            Integer k;
            // b - 2ak in (-a, a]
            Integer shifted = f.b + f.a - 1;
            mpz_fdiv_q(k.get_mpz_t(), shifted.get_mpz_t(), two_a.get_mpz_t());
            if (f.b - two_a * k > f.a) k += 1;
            Integer nb = f.b - two_a * k;
            Integer nc = f.c - k * f.b + k * k * f.a;
            f.b = nb;
            f.c = nc;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if ((f.b < 0) && (abs(f.b) == f.a || f.a == f.c)) f.b = -f.b;
    return f;
}

namespace {

Integer eval_form(const QuadraticForm& f, const Integer& x, const Integer& y) {
    return f.a * x * x + f.b * x * y + f.c * y * y;
}

/// Equivalent form of g with leading coefficient coprime to n (and nonzero).
QuadraticForm with_coprime_lead(const QuadraticForm& g, const Integer& n) {
    for (long radius = 1; radius <= 64; ++radius) {
        for (long x = -radius; x <= radius; ++x) {
            for (long y = -radius; y <= radius; ++y) {
                if (std::max(labs(x), labs(y)) != radius && radius != 1) continue;
                Integer gx(x), gy(y);
                if (gcd(gx, gy) != 1) continue;
                Integer v = eval_form(g, gx, gy);
                if (v == 0 || gcd(v, n) != 1) continue;
                // Extend (x, y) to a unimodular matrix [[x, r], [y, s]].
                Integer r, s, d;
                mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), gx.get_mpz_t(), gy.get_mpz_t());
                r = -r;  // x*s - y*r = 1
                Integer a2 = v;
                Integer b2 = 2 * (g.a * gx * r + g.c * gy * s) + g.b * (gx * s + gy * r);
                Integer c2 = eval_form(g, r, s);
                QuadraticForm out{a2, b2, c2};
                if (out.discriminant() != g.discriminant())
                    throw std::logic_error("with_coprime_lead: discriminant not preserved");
                return out;
            }
        }
    }
    throw std::logic_error("with_coprime_lead: no coprime representative found");
}

}  // namespace

QuadraticForm compose(const QuadraticForm& f, const QuadraticForm& g) {
    Integer D = f.discriminant();
    if (D != g.discriminant()) throw std::domain_error("compose: discriminant mismatch");
    QuadraticForm g2 = with_coprime_lead(g, f.a);
    // Concordant B: B = b_f mod 2a_f, B = b_g2 mod 2a_g2; both congruences are
    // compatible mod 2 since b = D mod 2.
    Integer m1 = 2 * f.a, m2 = 2 * g2.a;
    Integer gcd_m, u, v;
    mpz_gcdext(gcd_m.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    Integer diff = g2.b - f.b;
    if (diff % gcd_m != 0) throw std::logic_error("compose: CRT not solvable");
    Integer lcm = m1 / gcd_m * m2;
    Integer B = f.b + m1 * (u * (diff / gcd_m) % (m2 / gcd_m));
    B %= lcm;
    if (B < 0) B += lcm;
    Integer A = f.a * g2.a;
    Integer num = B * B - D;
    Integer C = num / (4 * A);
    if (C * 4 * A != num) throw std::logic_error("compose: B^2 != D mod 4A");
    return reduce({A, B, C});
}

int ClassGroupTable::index_of(const QuadraticForm& f) const {
    auto it = std::lower_bound(forms.begin(), forms.end(), f);
    if (it == forms.end() || !(*it == f)) throw std::domain_error("index_of: not a reduced form of d_K");
    return static_cast<int>(it - forms.begin());
}

int ClassGroupTable::inverse_of(int i) const {
    const QuadraticForm& f = forms[static_cast<size_t>(i)];
    return index_of(reduce({f.a, -f.b, f.c}));
}

void ClassGroupTable::ensure_composition() {
    if (!composition.empty()) return;
    composition.assign(forms.size(), std::vector<int>(forms.size(), -1));
    for (size_t i = 0; i < forms.size(); ++i)
        for (size_t j = 0; j < forms.size(); ++j)
            composition[i][j] = index_of(compose(forms[i], forms[j]));
}

ClassGroupTable reduced_forms(const Integer& d_K, std::uint64_t budget) {
    if (!is_fundamental_discriminant(d_K) || d_K >= 0)
        throw std::domain_error("reduced_forms: d_K must be a negative fundamental discriminant");
    Integer ad = -d_K;
    if (ad > Integer(static_cast<unsigned long>(budget)))
        throw BudgetError("reduced_forms: |d_K| exceeds budget", ad.get_ui());

    ClassGroupTable table;
    table.d_K = d_K;
    Integer a_max = isqrt(ad / 3);
    for (Integer a = 1; a <= a_max; ++a) {
        for (Integer b = -a + 1; b <= a; ++b) {
            Integer num = b * b - d_K;
            if (num % (4 * a) != 0) continue;
            Integer c = num / (4 * a);
            QuadraticForm f{a, b, c};
            if (is_reduced(f)) table.forms.push_back(f);
        }
    }
    std::sort(table.forms.begin(), table.forms.end());
    table.h = static_cast<int>(table.forms.size());
    Integer r = d_K % 2 == 0 ? Integer(0) : Integer(1);
    table.principal_index = table.index_of(reduce({Integer(1), r, (r * r - d_K) / 4}));
    return table;
}

std::optional<int> prime_class_order(const Integer& d_K, std::uint64_t p, ClassGroupTable& table) {
    if (table.d_K != d_K) throw std::domain_error("prime_class_order: table mismatch");
    Integer P(static_cast<unsigned long>(p));
    std::optional<QuadraticForm> prime_form;
    for (Integer b = 0; b < 2 * P; ++b) {
        Integer num = b * b - d_K;
        if (num % (4 * P) == 0) {
            prime_form = QuadraticForm{P, b, num / (4 * P)};
            break;
        }
    }
    if (!prime_form) return std::nullopt;  // inert
    QuadraticForm cls = reduce(*prime_form);
    const QuadraticForm& principal = table.forms[static_cast<size_t>(table.principal_index)];
    QuadraticForm acc = cls;
    int order = 1;
    while (!(acc == principal)) {
        acc = compose(acc, cls);
        ++order;
        if (order > table.h) throw std::logic_error("prime_class_order: order exceeds h");
    }
    return order;
}

std::set<std::uint64_t> t_torsion_violators(const Integer& d_K, int t, std::uint64_t N) {
    if (t < 1 || N < 2) throw std::domain_error("t_torsion_violators: need t >= 1, N >= 2");
    ClassGroupTable table = reduced_forms(d_K);
    std::set<std::uint64_t> out;
    for (std::uint64_t p : shared_sieve().primes_below(N)) {
        auto order = prime_class_order(d_K, p, table);
        if (!order) continue;  // inert: (p)^t principal
        if (t % *order != 0) out.insert(p);
    }
    return out;
}

namespace {

constexpr unsigned kRoundBits = 160;

/// prefix * [tail_lo(N), 1] where prefix multiplies alpha over the selected
/// primes below N; N grows until the width meets tol.
CertifiedInterval truncated_alpha_product(int n, const Rational& tol,
                                          const std::function<bool(std::uint64_t)>& selected) {
    if (n < 2) throw std::domain_error("alpha product: n must be >= 2");
    if (tol <= 0) throw std::domain_error("alpha product: tol must be positive");
    PrimeSieve& sieve = shared_sieve();
    CertifiedInterval prefix = CertifiedInterval::point(Rational(1));
    std::uint64_t q = 1;
    while (true) {
        std::uint64_t p = sieve.next_prime(q + 1);
        std::uint64_t N = q + 1 < 2 ? 2 : q + 1;
        CertifiedInterval total = iv_mul(prefix, exact::tail_factor(std::max<std::uint64_t>(N, 2), n));
        if (total.width() <= tol) return total;
        if (selected(p))
            prefix = round_outward(iv_scale(prefix, exact::local_factors(p, n).alpha), kRoundBits);
        q = p;
    }
}

}  // namespace

CertifiedInterval torsion_density(const Integer& d_K, int t, int n, const Rational& tol) {
    ClassGroupTable table = reduced_forms(d_K);
    auto in_violators = [&](std::uint64_t p) {
        auto order = prime_class_order(d_K, p, table);
        return order.has_value() && t % *order != 0;
    };
    return truncated_alpha_product(n, tol, in_violators);
}

CharacterProducts character_products(const Integer& d_K, int n, std::uint64_t N) {
    if (!is_fundamental_discriminant(d_K))
        throw std::domain_error("character_products: d_K must be fundamental");
    if (N < 3) throw std::domain_error("character_products: N must be >= 3");
    CertifiedInterval f_prefix = CertifiedInterval::point(Rational(1));
    CertifiedInterval g_prefix = f_prefix;
    for (std::uint64_t p : shared_sieve().primes_below(N)) {
        int chi = kronecker(d_K, Integer(static_cast<unsigned long>(p)));
        Rational alpha = exact::local_factors(p, n).alpha;
        if (chi >= 0) f_prefix = round_outward(iv_scale(f_prefix, alpha), kRoundBits);
        if (chi == 1) g_prefix = round_outward(iv_scale(g_prefix, alpha), kRoundBits);
    }
    CertifiedInterval tail = exact::tail_factor(N, n);
    return {iv_mul(f_prefix, tail), iv_mul(g_prefix, tail)};
}

std::string class_table_csv(ClassGroupTable& table, std::uint64_t prime_bound) {
    std::ostringstream out;
    out << "d_K,h,forms\n";
    out << table.d_K << "," << table.h << ",\"";
    for (size_t i = 0; i < table.forms.size(); ++i) {
        if (i) out << " ";
        out << "(" << table.forms[i].a << "," << table.forms[i].b << "," << table.forms[i].c << ")";
    }
    out << "\"\n";
    out << "p,class_order\n";
    for (std::uint64_t p : shared_sieve().primes_below(prime_bound)) {
        auto order = prime_class_order(table.d_K, p, table);
        out << p << "," << (order ? std::to_string(*order) : std::string("inert")) << "\n";
    }
    return out.str();
}

}  // namespace ringdens::quadfield
