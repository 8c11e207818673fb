#include "doctest.h"

#include <cstdlib>

#include "cmlj/modular.hpp"
#include "cmlj/ramsys.hpp"

using namespace cmlj;

namespace {
bool near_decimal(const CBall& v, const char* re, double tol) {
    CBall target = CBall::from_decimal(re, "0", 192);
    return v.mid_dist_ub(target).to_double() < tol;
}
std::uint64_t mix(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
} // namespace

TEST_CASE("j_of_lambda hits the classic values") {
    mpfr_prec_t p = 256;
    CHECK(j_of_lambda(CBall::from_si(-1, p)).contains_si_pair(1728, 0));
    CHECK(j_of_lambda(CBall::from_si(2, p)).contains_si_pair(1728, 0));
    CBall lam = CBall::from_si(3, p) + CBall::sqrt_ui(2, p).mul_si(2);
    CHECK(j_of_lambda(lam).contains_si_pair(8000, 0));
    // (1+3 sqrt7 i)/2 -> -3375
    CBall l3 = (CBall::from_si(1, p) + CBall::sqrt_ui(7, p).mul_si(3).mul_i()).div_si(2);
    CHECK(j_of_lambda(l3).contains_si_pair(-3375, 0));
    CHECK_THROWS_AS(j_of_lambda(CBall::from_si(1, p)), LambdaDegenerate);
}

TEST_CASE("j S3 invariance on random lambdas") {
    std::uint64_t s = 17;
    for (int t = 0; t < 1000; ++t) {
        double re = -3.0 + 6.0 * (double)(mix(s) >> 11) * 0x1.0p-53;
        double im = -3.0 + 6.0 * (double)(mix(s) >> 11) * 0x1.0p-53;
        CBall lam = CBall::from_doubles(re, im, 192);
        if (!lam.is_nonzero() ||
            !lam.certifiably_distinct(CBall::from_si(1, 192)))
            continue;
        CBall j0 = j_of_lambda(lam);
        for (const auto& o : s3_orbit(lam)) {
            CBall jo = j_of_lambda(o);
            REQUIRE(!j0.certifiably_distinct(jo));
        }
    }
}

TEST_CASE("j_from_quadratic matches j at both roots, random mu") {
    std::uint64_t s = 99;
    mpfr_prec_t p = 192;
    int done = 0;
    for (int t = 0; t < 1000; ++t) {
        double re = -6.0 + 12.0 * (double)(mix(s) >> 11) * 0x1.0p-53;
        double im = -6.0 + 12.0 * (double)(mix(s) >> 11) * 0x1.0p-53;
        CBall mu = CBall::from_doubles(re, im, p);
        for (auto shape : {QuadShape::PlusMuPlusOne, QuadShape::MinusMuPlusMu}) {
            UniPoly q;
            if (shape == QuadShape::PlusMuPlusOne) {
                q.coeffs = {CBall::from_si(1, p), mu, CBall::from_si(1, p)};
            } else {
                q.coeffs = {mu, -mu, CBall::from_si(1, p)};
            }
            CBall jq;
            try {
                jq = j_from_quadratic(mu, shape);
            } catch (const DenominatorZero&) {
                continue;
            }
            std::vector<CBall> roots;
            try {
                roots = poly_roots(q, p);
            } catch (const PrecisionExhausted&) {
                continue;
            }
            for (const auto& r : roots) {
                if (!r.is_nonzero() || !r.certifiably_distinct(CBall::from_si(1, p)))
                    continue;
                CBall jr = j_of_lambda(r);
                REQUIRE(!jq.certifiably_distinct(jr));
                ++done;
            }
        }
    }
    CHECK(done > 500);
}

TEST_CASE("quadratic shortcut: mu = 2(193+112 sqrt3)") {
    mpfr_prec_t p = 256;
    CBall s3 = CBall::sqrt_ui(3, p);
    CBall mu = (CBall::from_si(193, p) + s3.mul_si(112)).mul_si(2);
    CBall j = j_from_quadratic(mu, QuadShape::PlusMuPlusOne);
    // 64 (387+224 sqrt3)^3 (97-56 sqrt3)
    CBall expect = (CBall::from_si(387, p) + s3.mul_si(224)).pow_ui(3).mul_si(64) *
                   (CBall::from_si(97, p) - s3.mul_si(56));
    CHECK(!j.certifiably_distinct(expect));
    CHECK(near_decimal(j, "153553679.3967288845", 1e-5));
}

TEST_CASE("q-expansion reproduces the printed decimals") {
    mpfr_prec_t p = 256;
    CBall i_tau = CBall::sqrt_ui(2, p).mul_i();
    CHECK(near_decimal(j_q_expansion(i_tau, 4), "7999.997704", 1e-5));
    CBall t7 = (CBall::from_si(1, p) + CBall::sqrt_ui(7, p).mul_i()).div_si(2);
    CHECK(near_decimal(j_q_expansion(t7, 5), "-3375.000073", 1e-5));
    CBall t3 = CBall::sqrt_ui(3, p).mul_i();
    CHECK(near_decimal(j_q_expansion(t3, 3), "53999.992414", 1e-5));
    CBall t11 = (CBall::from_si(1, p) + CBall::sqrt_ui(11, p).mul_i()).div_si(2);
    CHECK(near_decimal(j_q_expansion(t11, 4), "-32767.999977", 1e-5));
    CBall t2i = CBall::from_si_pair(0, 2, p);
    CHECK(near_decimal(j_q_expansion(t2i, 4), "287495.999999", 1e-5));
    // purely-imaginary q: even terms only
    CBall t15 = (CBall::from_si(1, p) + CBall::sqrt_ui(15, p).mul_i()).div_si(4);
    CHECK(near_decimal(j_q_expansion(t15, 6, true), "632.833459", 1e-5));
    CHECK_THROWS_AS(j_q_expansion(CBall::from_si_pair(0, -1, p), 4), NotInUpperHalfPlane);
    CHECK_THROWS_AS(j_q_expansion(t2i, 7), DomainError);
}

TEST_CASE("theta oracle: lambda(i)=1/2, j values certified") {
    mpfr_prec_t p = 256;
    ThetaJ ti = j_theta_oracle(CBall::from_si_pair(0, 1, p), p);
    CHECK(ti.lambda_tau.contains(CBall::from_ratio(1, 2, 320)));
    CHECK(ti.j_tau.contains_si_pair(1728, 0));

    ThetaJ t2 = j_theta_oracle(CBall::sqrt_ui(2, p).mul_i(), p);
    CHECK(t2.j_tau.contains_si_pair(8000, 0));
    // lambda(sqrt2 i) = 3 - 2 sqrt2, in the S3 orbit of 3 + 2 sqrt2
    CBall lam_tab = CBall::from_si(3, p) + CBall::sqrt_ui(2, p).mul_si(2);
    bool in_orbit = false;
    for (const auto& o : s3_orbit(lam_tab))
        if (!t2.lambda_tau.certifiably_distinct(o)) in_orbit = true;
    CHECK(in_orbit);

    ThetaJ t2i = j_theta_oracle(CBall::from_si_pair(0, 2, p), p);
    CHECK(t2i.j_tau.contains_si_pair(287496, 0));
    CHECK(t2i.j_tau.radius() < UReal::pow2(-220)); // ~ >= 50 digits
}

TEST_CASE("oracle vs 6-term series tail") {
    mpfr_prec_t p = 256;
    for (auto tau : {CBall::sqrt_ui(2, p).mul_i(), CBall::from_si_pair(0, 2, p),
                     (CBall::from_si(1, p) + CBall::sqrt_ui(15, p).mul_i()).div_si(2)}) {
        CBall series = j_q_expansion(tau, 6);
        ThetaJ th = j_theta_oracle(tau, p);
        UReal diff = (series - th.j_tau).abs_ub();
        CBall q = (CBall::pi(p).mul_si(2).mul_i() * tau).exp();
        UReal lim = q.abs_ub();
        mpfr_pow_ui(lim.raw(), lim.raw(), 5, MPFR_RNDU);
        mpfr_mul_d(lim.raw(), lim.raw(), 1e12, MPFR_RNDU);
        CHECK(diff < lim);
    }
}

TEST_CASE("recognize_quadratic: rational, quadratic, insufficient precision") {
    mpfr_prec_t p = 256;
    // exact rational
    auto r = recognize_quadratic(CBall::from_ratio(-22, 7, p));
    REQUIRE(r.has_value());
    CHECK(r->degree == 1);
    CHECK(r->min_poly == std::vector<std::string>({"22", "7"}));

    // j(2 sqrt2 i) = 10^3 (5+sqrt2)^3 (7+5 sqrt2)^2: x^2 - 52250000 x + 12167000000
    CBall s2 = CBall::sqrt_ui(2, p);
    CBall j = (CBall::from_si(5, p) + s2).pow_ui(3).mul_si(1000) *
              (CBall::from_si(7, p) + s2.mul_si(5)).sqr();
    auto q = recognize_quadratic(j);
    REQUIRE(q.has_value());
    CHECK(q->degree == 2);
    CHECK(q->min_poly == std::vector<std::string>({"12167000000", "-52250000", "1"}));
    REQUIRE(q->conjugate_approx.has_value());
    CBall conj = (CBall::from_si(5, p) - s2).pow_ui(3).mul_si(1000) *
                 (CBall::from_si(7, p) - s2.mul_si(5)).sqr();
    CHECK(!q->conjugate_approx->certifiably_distinct(conj));

    // radius too big for the requested height bound
    CBall fuzzy = CBall::from_si(5, 64);
    fuzzy.add_error_pow2(-10);
    CHECK_THROWS_AS(recognize_quadratic(fuzzy, 1000000000000LL), InsufficientPrecision);
}

TEST_CASE("recognition: the two Q(sqrt5) conjugate j values share a minimal polynomial") {
    mpfr_prec_t p = 320;
    CBall s5 = CBall::sqrt_ui(5, p);
    CBall rho1 = (CBall::from_si(7, p) - s5.mul_si(3)).sqr() *
                 (s5.mul_si(3) - CBall::from_si(1, p)).pow_ui(3) *
                 (CBall::from_si(15, p) + s5.mul_si(3)).pow_ui(3);
    rho1 = rho1.div_si(256);
    auto cand = recognize_quadratic(rho1);
    REQUIRE(cand.has_value());
    CHECK(cand->degree == 2);
    CHECK(cand->min_poly == std::vector<std::string>({"-121287375", "191025", "1"}));
}

TEST_CASE("match assigns D=2 j values to the right periods") {
    mpfr_prec_t p = 256;
    std::vector<CBall> js = {CBall::from_si(1728, p), CBall::from_si(8000, p),
                             CBall::from_si(-3375, p)};
    std::vector<ExactTau> taus = {ExactTau::from_quadratic(1, 0, 1),
                                  ExactTau::from_quadratic(1, 0, 2),
                                  ExactTau::from_quadratic(2, -2, 4)};
    // note: (2,-2,4) normalizes to (1,-1,2): tau = (1+sqrt7 i)/2
    auto got = match(js, taus, 4);
    CHECK(got == std::vector<int>({0, 1, 2}));
}

TEST_CASE("hilbert_generator on table rows") {
    TauRep t{2, 0, 0, 1}; // sqrt2 i
    auto h = hilbert_generator(t, 256);
    CHECK(h.j_value.degree == 1);
    CHECK(h.j_value.min_poly == std::vector<std::string>({"-8000", "1"}));
    CHECK(h.field_label == "Q(sqrt(-2))");
    CHECK(h.order.conductor_divisor == 1);

    TauRep t15{4, 1, 1, 1}; // (1+sqrt15 i)/2
    auto h15 = hilbert_generator(t15, 320);
    CHECK(h15.j_value.degree == 2);
    CHECK(h15.field_label == "Q(sqrt(-15))");
    CHECK(h15.j_value.min_poly == std::vector<std::string>({"-121287375", "191025", "1"}));
}
