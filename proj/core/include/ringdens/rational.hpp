#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace ringdens {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Integer pow_int(const Integer& base, unsigned long exp);

/// Largest y with y^2 <= x (x >= 0).
Integer isqrt(const Integer& x);

bool is_perfect_square(const Integer& x);

/// Closed interval [lo, hi] of exact rationals bracketing a real quantity.
/// Every producer is responsible for the bracketing argument; consumers may
/// only widen.
struct CertifiedInterval {
    Rational lo;
    Rational hi;

    CertifiedInterval() : lo(0), hi(0) {}
    CertifiedInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("CertifiedInterval: lo > hi");
    }
    static CertifiedInterval point(const Rational& v) { return {v, v}; }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains(const CertifiedInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const CertifiedInterval& o) const { return lo <= o.hi && o.lo <= hi; }
    /// Strict comparison: every point of *this below every point of o.
    bool strictly_below(const CertifiedInterval& o) const { return hi < o.lo; }
};

CertifiedInterval iv_add(const CertifiedInterval& a, const CertifiedInterval& b);
CertifiedInterval iv_sub(const CertifiedInterval& a, const CertifiedInterval& b);
CertifiedInterval iv_mul(const CertifiedInterval& a, const CertifiedInterval& b);
CertifiedInterval iv_scale(const CertifiedInterval& a, const Rational& c);
CertifiedInterval iv_hull(const CertifiedInterval& a, const CertifiedInterval& b);

/// Widen to endpoints with denominator 2^bits (lo down, hi up).  Keeps the
/// numbers small through long certified products; bits = 0 keeps exact values.
CertifiedInterval round_outward(const CertifiedInterval& a, unsigned bits);

Rational round_down_dyadic(const Rational& q, unsigned bits);
Rational round_up_dyadic(const Rational& q, unsigned bits);

/// Decimal strings truncated towards -inf / +inf so that printed values
/// remain valid brackets.
std::string decimal_lower(const Rational& q, int digits);
std::string decimal_upper(const Rational& q, int digits);

/// "[lower, upper]" with outward-rounded decimals.
std::string render(const CertifiedInterval& iv, int digits);

}  // namespace ringdens
