#include "ringdens/rational.hpp"

#include <algorithm>

namespace ringdens {

Integer pow_int(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

Integer isqrt(const Integer& x) {
    if (x < 0) throw std::domain_error("isqrt: negative argument");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

bool is_perfect_square(const Integer& x) {
    if (x < 0) return false;
    return mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

CertifiedInterval iv_add(const CertifiedInterval& a, const CertifiedInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

CertifiedInterval iv_sub(const CertifiedInterval& a, const CertifiedInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

CertifiedInterval iv_mul(const CertifiedInterval& a, const CertifiedInterval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return {lo, hi};
}

CertifiedInterval iv_scale(const CertifiedInterval& a, const Rational& c) {
    if (c >= 0) return {a.lo * c, a.hi * c};
    return {a.hi * c, a.lo * c};
}

CertifiedInterval iv_hull(const CertifiedInterval& a, const CertifiedInterval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Rational round_down_dyadic(const Rational& q, unsigned bits) {
    Integer num = q.get_num() << bits;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    Rational r(fl, Integer(1) << bits);
    r.canonicalize();
    return r;
}

Rational round_up_dyadic(const Rational& q, unsigned bits) {
    Integer num = q.get_num() << bits;
    Integer cl;
    mpz_cdiv_q(cl.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    Rational r(cl, Integer(1) << bits);
    r.canonicalize();
    return r;
}

CertifiedInterval round_outward(const CertifiedInterval& a, unsigned bits) {
    if (bits == 0) return a;
    return {round_down_dyadic(a.lo, bits), round_up_dyadic(a.hi, bits)};
}

namespace {

// Decimal string of q truncated towards -infinity (round_up = false) or
// +infinity (round_up = true).
std::string decimal_string(const Rational& q, int digits, bool round_up) {
    if (digits < 0) digits = 0;
    Integer scale = pow_int(10, static_cast<unsigned long>(digits));
    Integer num = q.get_num() * scale;
    Integer t;
    if (round_up)
        mpz_cdiv_q(t.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    else
        mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    bool neg = t < 0;
    Integer a = abs(t);
    std::string s = a.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out;
    if (neg) out += '-';
    out += s.substr(0, s.size() - digits);
    if (digits > 0) {
        out += '.';
        out += s.substr(s.size() - digits);
    }
    return out;
}

}  // namespace

std::string decimal_lower(const Rational& q, int digits) { return decimal_string(q, digits, false); }
std::string decimal_upper(const Rational& q, int digits) { return decimal_string(q, digits, true); }

std::string render(const CertifiedInterval& iv, int digits) {
    return "[" + decimal_lower(iv.lo, digits) + ", " + decimal_upper(iv.hi, digits) + "]";
}

}  // namespace ringdens
