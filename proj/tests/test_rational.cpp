#include <doctest.h>

#include "ringdens/rational.hpp"

using namespace ringdens;

TEST_CASE("pow_int and isqrt") {
    CHECK(pow_int(Integer(3), 0) == 1);
    CHECK(pow_int(Integer(3), 5) == 243);
    CHECK(pow_int(Integer(-2), 3) == -8);
    CHECK(isqrt(Integer(0)) == 0);
    CHECK(isqrt(Integer(15)) == 3);
    CHECK(isqrt(Integer(16)) == 4);
    CHECK(isqrt(pow_int(Integer(10), 40) - 1) == pow_int(Integer(10), 20) - 1);
    CHECK(is_perfect_square(Integer(144)));
    CHECK(!is_perfect_square(Integer(145)));
    CHECK(!is_perfect_square(Integer(-4)));
}

TEST_CASE("make_rational canonicalizes and rejects zero denominators") {
    CHECK(make_rational(Integer(4), Integer(6)) == Rational(2, 3));
    CHECK(make_rational(Integer(3), Integer(-6)) == Rational(-1, 2));
    CHECK_THROWS_AS(make_rational(Integer(1), Integer(0)), std::domain_error);
}

TEST_CASE("interval constructors enforce ordering") {
    CHECK_THROWS_AS(CertifiedInterval(Rational(1), Rational(0)), std::invalid_argument);
    CertifiedInterval iv(Rational(1, 3), Rational(1, 2));
    CHECK(iv.width() == Rational(1, 6));
    CHECK(iv.contains(Rational(2, 5)));
    CHECK(!iv.contains(Rational(3, 5)));
}

TEST_CASE("interval arithmetic brackets sample points") {
    CertifiedInterval a(Rational(-1, 2), Rational(1, 3));
    CertifiedInterval b(Rational(1, 4), Rational(2));
    // iv_mul must contain every product x*y with x in a, y in b.
    CertifiedInterval prod = iv_mul(a, b);
    for (const Rational& x : {a.lo, a.hi, a.mid()})
        for (const Rational& y : {b.lo, b.hi, b.mid()}) CHECK(prod.contains(x * y));
    CertifiedInterval sum = iv_add(a, b);
    CHECK(sum.lo == Rational(-1, 4));
    CHECK(sum.hi == Rational(7, 3));
    CertifiedInterval diff = iv_sub(a, b);
    CHECK(diff.lo == a.lo - b.hi);
    CHECK(diff.hi == a.hi - b.lo);
    CertifiedInterval hull = iv_hull(a, b);
    CHECK(hull.contains(a));
    CHECK(hull.contains(b));
    CHECK(iv_scale(a, Rational(-2)).lo == Rational(-2, 3));
}

TEST_CASE("outward rounding widens and keeps containment") {
    CertifiedInterval iv(Rational(1, 7), Rational(22, 7));
    for (unsigned bits : {8u, 32u, 160u}) {
        CertifiedInterval r = round_outward(iv, bits);
        CHECK(r.contains(iv));
        CHECK(r.width() - iv.width() <= Rational(2, pow_int(Integer(2), bits)));
    }
    CHECK(round_outward(iv, 0).lo == iv.lo);
    CHECK(round_down_dyadic(Rational(1, 3), 4) == Rational(5, 16));
    CHECK(round_up_dyadic(Rational(1, 3), 4) == Rational(3, 8));
}

namespace {

// parse "-0.334" back into an exact rational
Rational from_decimal(const std::string& text) {
    bool negative = !text.empty() && text[0] == '-';
    std::string digits = negative ? text.substr(1) : text;
    auto dot = digits.find('.');
    unsigned long frac = 0;
    if (dot != std::string::npos) {
        frac = digits.size() - dot - 1;
        digits.erase(dot, 1);
    }
    Rational q = make_rational(Integer(digits, 10), pow_int(Integer(10), frac));
    return negative ? -q : q;
}

}  // namespace

TEST_CASE("decimal rendering brackets the exact value") {
    Rational q(1, 7);
    for (int digits : {3, 9, 15}) {
        Rational lo = from_decimal(decimal_lower(q, digits));
        Rational hi = from_decimal(decimal_upper(q, digits));
        CHECK(lo <= q);
        CHECK(q <= hi);
        CHECK(hi - lo <= make_rational(Integer(1), pow_int(Integer(10), digits)));
    }
    CHECK(decimal_lower(Rational(-1, 3), 3) == "-0.334");
    CHECK(decimal_upper(Rational(-1, 3), 3) == "-0.333");
    CHECK(decimal_lower(Rational(1, 2), 2) == "0.50");
    CHECK(decimal_upper(Rational(1, 2), 2) == "0.50");
}
