#include "doctest.h"

#include "cmlj/ball.hpp"
#include "cmlj/unipoly.hpp"

using namespace cmlj;

namespace {
CBall ball_3p2s2(mpfr_prec_t prec) {
    return CBall::from_si(3, prec) + CBall::sqrt_ui(2, prec).mul_si(2);
}
} // namespace

TEST_CASE("ball arithmetic keeps exact values inside") {
    // containment under doubled precision: coarse result must contain fine result
    auto expr = [](mpfr_prec_t p) {
        CBall a = CBall::from_ratio(1, 3, p);
        CBall b = CBall::sqrt_ui(7, p).mul_i() + CBall::from_si(2, p);
        CBall c = (a * b + b.inv()).sqrt() * (b - a).exp().inv();
        return c;
    };
    CBall coarse = expr(64);
    CBall fine = expr(256);
    CHECK(coarse.contains(fine));
    CHECK(coarse.radius().to_double() > fine.radius().to_double());
}

TEST_CASE("certifiably distinct and contains_zero") {
    CBall a = CBall::from_si(1, 128);
    CBall b = CBall::from_si(-1, 128);
    CHECK(a.certifiably_distinct(b));
    CBall z = a - a;
    CHECK(z.contains_zero());
    CHECK(!z.is_nonzero());
    CBall w = a + b;
    CHECK(w.contains_zero());
}

TEST_CASE("division and sqrt on reals stay real") {
    CBall x = CBall::from_si(9, 128);
    CBall s = x.sqrt();
    CHECK(s.contains_si_pair(3, 0));
    CBall q = CBall::from_si(10, 128) / CBall::from_si(4, 128);
    CHECK(q.contains(CBall::from_ratio(5, 2, 256)));
}

TEST_CASE("ratio and decimal parse round-trip within radius") {
    CBall d = CBall::from_decimal("2.75", "-0.5", 128);
    CBall e = CBall::from_ratio(11, 4, 256) - CBall::from_ratio(1, 2, 256).mul_i();
    CHECK(d.contains(e));
}

TEST_CASE("poly_eval encloses roots of known factorizations") {
    // p = x^2 - 1 at 1
    UniPoly p = UniPoly::from_si_coeffs({-1, 0, 1}, 128);
    CBall v = poly_eval(p, CBall::from_si(1, 128));
    CHECK(v.contains_zero());
    CHECK(v.radius() <= UReal::pow2(-50));

    // x^4 + 28i x^3 - 6 x^2 - 28i x + 1 at 0 is exactly 1
    UniPoly q;
    q.coeffs.push_back(CBall::from_si(1, 128));
    q.coeffs.push_back(CBall::from_si_pair(0, -28, 128));
    q.coeffs.push_back(CBall::from_si(-6, 128));
    q.coeffs.push_back(CBall::from_si_pair(0, 28, 128));
    q.coeffs.push_back(CBall::from_si(1, 128));
    CBall at0 = poly_eval(q, CBall(128));
    CHECK(at0.contains_si_pair(1, 0));
    CHECK(at0.radius().is_zero());
}

TEST_CASE("quadratic lambda'^2 + 2(193+112 sqrt3) lambda' + 1 vanishes at its root") {
    mpfr_prec_t p = 256;
    // lambda' = -(2+sqrt3)^2 (sqrt2 + 3^(1/4))^4
    CBall s3 = CBall::sqrt_ui(3, p);
    CBall q3 = s3.sqrt(); // 3^(1/4)
    CBall s2 = CBall::sqrt_ui(2, p);
    CBall lam = -((CBall::from_si(2, p) + s3).sqr() * (s2 + q3).pow_ui(4));
    CBall mu = (CBall::from_si(193, p) + s3.mul_si(112)).mul_si(2);
    UniPoly quad;
    quad.coeffs.push_back(CBall::from_si(1, p));
    quad.coeffs.push_back(mu);
    quad.coeffs.push_back(CBall::from_si(1, p));
    CHECK(poly_eval(quad, lam).contains_zero());
}

TEST_CASE("poly_roots: x^2-1 and Vieta checks") {
    UniPoly p = UniPoly::from_si_coeffs({-1, 0, 1}, 192);
    auto roots = poly_roots(p, 192);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].contains_si_pair(-1, 0));
    CHECK(roots[1].contains_si_pair(1, 0));
    // Vieta: sum = 0, product = -1
    CBall sum = roots[0] + roots[1];
    CBall prod = roots[0] * roots[1];
    CHECK(sum.contains_zero());
    CHECK(prod.contains_si_pair(-1, 0));
}

TEST_CASE("poly_roots: degree-3 transport quartic roots square to the known surds") {
    mpfr_prec_t p = 256;
    UniPoly q;
    q.coeffs.push_back(CBall::from_si(1, p));
    q.coeffs.push_back(CBall::from_si_pair(0, -28, p));
    q.coeffs.push_back(CBall::from_si(-6, p));
    q.coeffs.push_back(CBall::from_si_pair(0, 28, p));
    q.coeffs.push_back(CBall::from_si(1, p));
    auto roots = poly_roots(q, p);
    REQUIRE(roots.size() == 4);
    CBall s3 = CBall::sqrt_ui(3, p);
    CBall q3 = s3.sqrt();
    CBall s2 = CBall::sqrt_ui(2, p);
    std::vector<CBall> expected;
    expected.push_back(-((CBall::from_si(2, p) + s3).sqr() * (s2 + q3).pow_ui(4)));
    expected.push_back(-((CBall::from_si(2, p) + s3).sqr() * (s2 - q3).pow_ui(4)));
    expected.push_back(-((CBall::from_si(2, p) - s3).sqr() * (s2 + q3.mul_i()).pow_ui(4)));
    expected.push_back(-((CBall::from_si(2, p) - s3).sqr() * (s2 - q3.mul_i()).pow_ui(4)));
    for (const auto& r : roots) {
        CBall lam = r.sqr();
        bool found = false;
        for (const auto& e : expected)
            if (!lam.certifiably_distinct(e)) found = true;
        CHECK(found);
        // each root satisfies the quartic
        CHECK(poly_eval(q, r).contains_zero());
    }
    // Vieta on the quartic: sum = -28i, product = 1
    CBall sum = roots[0] + roots[1] + roots[2] + roots[3];
    CHECK(sum.contains_si_pair(0, -28));
    CBall prod = roots[0] * roots[1] * roots[2] * roots[3];
    CHECK(prod.contains_si_pair(1, 0));
}

TEST_CASE("poly_roots refuses multiple roots with PrecisionExhausted") {
    // (x-1)^2
    UniPoly p = UniPoly::from_si_coeffs({1, -2, 1}, 128);
    CHECK_THROWS_AS(poly_roots(p, 128), PrecisionExhausted);
}

TEST_CASE("quadratic with large coefficients (Hilbert-style)") {
    // x^2 - 52250000 x + 12167000000, roots ~ 232.86 and ~52249767.1
    UniPoly p = UniPoly::from_si_coeffs({12167000000L, -52250000L, 1L}, 256);
    auto roots = poly_roots(p, 256);
    REQUIRE(roots.size() == 2);
    CBall sum = roots[0] + roots[1];
    CHECK(sum.contains_si_pair(52250000L, 0));
    for (const auto& r : roots) CHECK(poly_eval(p, r).contains_zero());
}
