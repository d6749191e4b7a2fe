#include "ringdens/modpoly.hpp"

#include <stdexcept>

namespace ringdens::modp {

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

Poly rem(Poly a, const Poly& b, std::uint64_t p) {
    if (b.empty()) throw std::domain_error("modp::rem: division by zero polynomial");
    std::uint64_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t c = a.back() * lead_inv % p;
        if (c != 0) {
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) {
                std::uint64_t sub = c * b[j] % p;
                a[off + j] = (a[off + j] + p - sub) % p;
            }
        }
        a.pop_back();
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly make_monic(Poly f, std::uint64_t p) {
    trim(f);
    if (f.empty() || f.back() == 1) return f;
    std::uint64_t inv = inv_mod(f.back(), p);
    for (auto& c : f) c = c * inv % p;
    return f;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a), p);
}

Poly derivative(const Poly& f, std::uint64_t p) {
    Poly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (i % p) % p);
    trim(d);
    return d;
}

Poly quot(Poly a, const Poly& b, std::uint64_t p) {
    trim(a);
    if (b.empty()) throw std::domain_error("modp::quot: division by zero polynomial");
    if (a.empty()) return {};
    if (a.size() < b.size()) throw std::domain_error("modp::quot: not divisible");
    std::uint64_t lead_inv = inv_mod(b.back(), p);
    Poly q(a.size() - b.size() + 1, 0);
    while (!a.empty() && a.size() >= b.size()) {
        std::uint64_t c = a.back() * lead_inv % p;
        size_t off = a.size() - b.size();
        q[off] = c;
        for (size_t j = 0; j < b.size(); ++j) {
            std::uint64_t sub = c * b[j] % p;
            a[off + j] = (a[off + j] + p - sub) % p;
        }
        trim(a);
    }
    if (!a.empty()) throw std::domain_error("modp::quot: not divisible");
    return q;
}

Poly pow_poly_mod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
    Poly r = {1};
    base = rem(std::move(base), m, p);
    while (e) {
        if (e & 1) r = rem(mul(r, base, p), m, p);
        base = rem(mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

namespace {

/// Distinct-degree split of a monic squarefree z; appends (multiplicity, e,
/// product) components.
void ddf(Poly z, int multiplicity, std::uint64_t p, std::vector<DDFComponent>& out) {
    Poly h = {0, 1};  // x
    int e = 0;
    while (2 * (e + 1) <= degree(z)) {
        ++e;
        h = pow_poly_mod(std::move(h), p, z, p);
        Poly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + p - 1) % p;  // h - x
        trim(hx);
        Poly d = gcd(hx, z, p);
        if (degree(d) > 0) {
            z = quot(std::move(z), d, p);
            h = rem(std::move(h), z, p);
            out.push_back({multiplicity, e, std::move(d)});
        }
    }
    if (degree(z) > 0) out.push_back({multiplicity, degree(z), std::move(z)});
}

}  // namespace

std::vector<DDFComponent> factor_distinct(const Poly& f, std::uint64_t p) {
    Poly g = make_monic(f, p);
    if (degree(g) < 1) throw std::domain_error("factor_distinct: degree must be >= 1");
    if (static_cast<std::uint64_t>(degree(g)) >= p)
        throw std::domain_error("factor_distinct: requires p > deg(f)");

    std::vector<DDFComponent> out;
    // Yun's squarefree decomposition; valid since char p > deg f.
    Poly d = derivative(g, p);
    Poly a = gcd(g, d, p);
    Poly w = quot(g, a, p);
    Poly s = quot(std::move(d), a, p);
    // y_i loop: s - w' picks out factors of multiplicity i.
    int i = 1;
    while (degree(w) > 0) {
        Poly wd = derivative(w, p);
        Poly diff(std::max(s.size(), wd.size()), 0);
        for (size_t j = 0; j < diff.size(); ++j) {
            std::uint64_t sv = j < s.size() ? s[j] : 0;
            std::uint64_t wv = j < wd.size() ? wd[j] : 0;
            diff[j] = (sv + p - wv) % p;
        }
        trim(diff);
        Poly y = gcd(w, diff, p);  // factors of multiplicity exactly i
        w = quot(std::move(w), y, p);
        s = quot(std::move(diff), y, p);
        if (degree(y) > 0) ddf(std::move(y), i, p, out);
        ++i;
    }
    return out;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
    Poly g = make_monic(f, p);
    int n = degree(g);
    if (n < 1) return false;
    if (n == 1) return true;
    // x^(p^n) == x mod g, and gcd(x^(p^(n/q)) - x, g) = 1 for prime q | n.
    auto frobenius_power = [&](int k) {
        Poly h = {0, 1};
        for (int i = 0; i < k; ++i) h = pow_poly_mod(std::move(h), p, g, p);
        return h;
    };
    Poly full = frobenius_power(n);
    Poly x = {0, 1};
    if (full != x) return false;
    for (int q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        bool q_prime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) q_prime = false;
        if (!q_prime) continue;
        Poly h = frobenius_power(n / q);
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        if (degree(gcd(h, g, p)) != 0) return false;
    }
    return true;
}

}  // namespace ringdens::modp
