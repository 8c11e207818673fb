#include "doctest.h"

#include "cmlj/ramsys.hpp"

using namespace cmlj;

namespace {

// lambda = e^{i pi/3} identity values for the D=3 S1 system
Assignment d3_s1_point(mpfr_prec_t p, int sign) {
    // e^{+-i pi/3} = 1/2 +- sqrt(3)/2 i
    CBall half = CBall::from_ratio(1, 2, p);
    CBall s3h = CBall::sqrt_ui(3, p).div_si(2);
    CBall lam = sign > 0 ? half + s3h.mul_i() : half - s3h.mul_i();
    CBall one = CBall::from_si(1, p);
    CBall k = CBall::from_ratio(-1, 3, p);
    CBall alpha = one + lam;
    CBall beta = (one + lam).div_si(3);
    // e^{+-2 pi i/3} = -1/2 +- sqrt(3)/2 i
    CBall omega = sign > 0 ? -half + s3h.mul_i() : -half - s3h.mul_i();
    CBall gamma = omega;
    CBall delta = -omega;
    return {k, lam, alpha, beta, gamma, delta};
}

} // namespace

TEST_CASE("build_system counts: 2D equations, 2D unknowns") {
    for (long long D : {3, 5, 7}) {
        for (auto v : {SystemVariant::S1, SystemVariant::S2, SystemVariant::S3}) {
            auto sys = build_system(D, v);
            CHECK(sys.equations.size() == size_t(2 * D));
            CHECK(sys.unknowns.size() == size_t(2 * D));
        }
    }
    for (long long D : {4, 6}) {
        for (auto v : {SystemVariant::S5, SystemVariant::S6}) {
            auto sys = build_system(D, v);
            CHECK(sys.equations.size() == size_t(2 * D));
            CHECK(sys.unknowns.size() == size_t(2 * D));
        }
    }
    auto s4 = build_system(6, SystemVariant::S4);
    CHECK(s4.equations.size() == 12);
    CHECK(s4.unknowns.size() == 12);
}

TEST_CASE("build_system rejects bad variant requests") {
    CHECK_THROWS_AS(build_system(3, SystemVariant::S5), VariantParityMismatch);
    CHECK_THROWS_AS(build_system(4, SystemVariant::S2), VariantParityMismatch);
    CHECK_THROWS_AS(build_system(4, SystemVariant::S4), SquareVariantForbidden);
    CHECK_THROWS_AS(build_system(9, SystemVariant::S1), SquareVariantForbidden);
}

TEST_CASE("D=4 S5 unknowns match the expected labels") {
    auto sys = build_system(4, SystemVariant::S5);
    std::vector<std::string> want = {"k", "lambda", "alpha", "beta", "u", "v", "u'", "v'"};
    CHECK(sys.unknowns == want);
}

TEST_CASE("residual vanishes at the D=3 S1 identity values") {
    auto sys = build_system(3, SystemVariant::S1);
    for (int sign : {+1, -1}) {
        auto point = d3_s1_point(192, sign);
        auto res = residual(sys, point);
        REQUIRE(res.size() == 6);
        for (const auto& r : res) CHECK(r.contains_zero());
    }
}

TEST_CASE("residual vanishes at D=3 S2 lambda=-7+4sqrt3 values") {
    mpfr_prec_t p = 192;
    auto sys = build_system(3, SystemVariant::S2);
    CBall s3 = CBall::sqrt_ui(3, p);
    CBall lam = CBall::from_si(-7, p) + s3.mul_si(4);
    CBall one = CBall::from_si(1, p);
    Assignment point = {CBall::from_ratio(-1, 3, p), lam,
                        (lam + one).div_si(2), lam.mul_si(2) / (lam + one),
                        -one, -lam};
    auto res = residual(sys, point);
    for (const auto& r : res) CHECK(r.contains_zero());
}

TEST_CASE("residual at a random point is generically nonzero") {
    auto sys = build_system(3, SystemVariant::S1);
    mpfr_prec_t p = 128;
    Assignment point = {CBall::from_doubles(0.3, 0.1, p), CBall::from_doubles(2.5, -0.4, p),
                        CBall::from_doubles(1.1, 0.2, p), CBall::from_doubles(-0.7, 0.9, p),
                        CBall::from_doubles(0.4, -1.2, p), CBall::from_doubles(2.2, 0.3, p)};
    auto res = residual(sys, point);
    bool any_nonzero = false;
    for (const auto& r : res) any_nonzero |= r.is_nonzero();
    CHECK(any_nonzero);
}

TEST_CASE("D=4 S5 residual vanishes at the closed-form family values") {
    mpfr_prec_t p = 192;
    auto sys = build_system(4, SystemVariant::S5);
    CBall s2 = CBall::sqrt_ui(2, p);
    CBall beta = CBall::from_si(-3, p) + s2.mul_si(2);
    CBall lam = beta.sqr();
    Assignment point = {CBall::from_ratio(-1, 4, p), lam, -beta, beta,
                        beta.mul_si(4) + CBall::from_si(2, p), beta.sqr(),
                        -(beta.mul_si(8) + CBall::from_si(2, p)), beta.sqr()};
    auto res = residual(sys, point);
    REQUIRE(res.size() == 8);
    for (const auto& r : res) CHECK(r.contains_zero());
}

TEST_CASE("assemble_h and square condition on the D=3 S1 solution") {
    auto sys = build_system(3, SystemVariant::S1);
    auto point = d3_s1_point(256, +1);
    HFunction h = assemble_h(sys, point);
    CHECK(h.num.degree() == 3);
    CHECK(h.den.degree() < 3);
    CHECK(verify_square_condition(h));
    auto census = ramification_census(h);
    CHECK(census_matches(census, 3));
}

TEST_CASE("square condition rejects h=x^2 with lambda=2") {
    mpfr_prec_t p = 192;
    HFunction h;
    h.num = UniPoly::from_si_coeffs({0, 0, 1}, p);
    h.den = UniPoly::from_si_coeffs({1}, p);
    h.lambda = CBall::from_si(2, p);
    CHECK(!verify_square_condition(h));
}

TEST_CASE("build_d2_cases produces 3 cases with square 4x4 systems") {
    auto cases = build_d2_cases();
    REQUIRE(cases.size() == 3);
    for (const auto& c : cases) {
        REQUIRE(c.subsystems.size() == 3);
        for (const auto& s : c.subsystems) {
            CHECK(s.equations.size() == 4);
            CHECK(s.unknowns.size() == 4);
        }
    }
}

TEST_CASE("D=2 family I solves subsystem (Q=x, split P) and transports") {
    mpfr_prec_t p = 256;
    auto cases = build_d2_cases();
    // lambda=-1, k=+-i/2: h = k(x-1)(x+1)/x
    const auto& sys = cases[0].subsystems[0];
    CBall k = CBall::from_ratio(1, 2, p).mul_i();
    CBall lam = CBall::from_si(-1, p);
    // h - 1 = i(x+i)^2/(2x) -> s1 = -i ; h + 1 = i(x-i)^2/(2x) -> s2 = i
    Assignment point = {k, lam, CBall::from_si_pair(0, -1, p), CBall::from_si_pair(0, 1, p)};
    auto res = residual(sys, point);
    for (const auto& r : res) CHECK(r.contains_zero());

    HFunction h = assemble_h(sys, point);
    CHECK(verify_square_condition(h));
    CHECK(census_matches(ramification_census(h), 2));

    // transport lambda -> 1 - lambda gives a valid pair with lambda = 2
    HFunction t = s3_transport(h, S3Move::OneMinus);
    CHECK(t.lambda.contains_si_pair(2, 0));
    CHECK(verify_square_condition(t));
    CHECK(census_matches(ramification_census(t), 2));

    // reciprocal twice is the identity up to ball tolerance
    HFunction r2 = s3_transport(s3_transport(h, S3Move::Reciprocal), S3Move::Reciprocal);
    CBall probe = CBall::from_doubles(0.37, 0.21, p);
    CBall v1 = h.eval(probe), v2 = r2.eval(probe);
    CHECK(!v1.certifiably_distinct(v2));
}

TEST_CASE("s3_orbit has six members and fixes j") {
    mpfr_prec_t p = 192;
    CBall lam = CBall::from_doubles(0.3, 0.7, p);
    auto orb = s3_orbit(lam);
    CHECK(orb.size() == 6);
}
