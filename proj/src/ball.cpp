#include "cmlj/ball.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

namespace cmlj {

// ---------------------------------------------------------------- UReal

UReal::UReal() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
UReal::UReal(const UReal& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDU); }
UReal::UReal(UReal&& o) noexcept { mpfr_init2(v_, kPrec); mpfr_swap(v_, o.v_); }
UReal& UReal::operator=(const UReal& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDU);
    return *this;
}
UReal& UReal::operator=(UReal&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}
UReal::~UReal() { mpfr_clear(v_); }

UReal UReal::zero() { return UReal(); }
UReal UReal::from_double(double d) {
    UReal r;
    if (d > 0) mpfr_set_d(r.v_, d, MPFR_RNDU);
    return r;
}
UReal UReal::pow2(long e) {
    UReal r;
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDU);
    return r;
}
double UReal::to_double() const { return mpfr_get_d(v_, MPFR_RNDU); }
std::string UReal::to_string() const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.3Re", v_) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}
UReal UReal::operator+(const UReal& o) const {
    UReal r;
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDU);
    return r;
}
UReal UReal::operator*(const UReal& o) const {
    UReal r;
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDU);
    return r;
}
UReal& UReal::operator+=(const UReal& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDU);
    return *this;
}
bool UReal::operator<(const UReal& o) const { return mpfr_less_p(v_, o.v_) != 0; }
bool UReal::operator<=(const UReal& o) const { return mpfr_lessequal_p(v_, o.v_) != 0; }
bool UReal::is_zero() const { return mpfr_zero_p(v_) != 0; }

// ---------------------------------------------------------------- CBall

void CBall::init(mpfr_prec_t prec) {
    prec_ = prec;
    mpfr_init2(re_, prec);
    mpfr_init2(im_, prec);
    mpfr_set_zero(re_, 1);
    mpfr_set_zero(im_, 1);
}

CBall::CBall(mpfr_prec_t prec) { init(prec); }
CBall::CBall(const CBall& o) : rad_(o.rad_) {
    prec_ = o.prec_;
    mpfr_init2(re_, prec_);
    mpfr_init2(im_, prec_);
    mpfr_set(re_, o.re_, MPFR_RNDN);
    mpfr_set(im_, o.im_, MPFR_RNDN);
}
CBall::CBall(CBall&& o) noexcept : rad_(std::move(o.rad_)) {
    prec_ = o.prec_;
    mpfr_init2(re_, prec_);
    mpfr_init2(im_, prec_);
    mpfr_swap(re_, o.re_);
    mpfr_swap(im_, o.im_);
}
CBall& CBall::operator=(const CBall& o) {
    if (this != &o) {
        if (prec_ != o.prec_) {
            mpfr_set_prec(re_, o.prec_);
            mpfr_set_prec(im_, o.prec_);
            prec_ = o.prec_;
        }
        mpfr_set(re_, o.re_, MPFR_RNDN);
        mpfr_set(im_, o.im_, MPFR_RNDN);
        rad_ = o.rad_;
    }
    return *this;
}
CBall& CBall::operator=(CBall&& o) noexcept {
    if (this != &o) {
        mpfr_swap(re_, o.re_);
        mpfr_swap(im_, o.im_);
        std::swap(prec_, o.prec_);
        rad_ = std::move(o.rad_);
    }
    return *this;
}
CBall::~CBall() {
    mpfr_clear(re_);
    mpfr_clear(im_);
}

CBall CBall::from_si(long re, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_set_si(z.re_, re, MPFR_RNDN);
    return z;
}
CBall CBall::from_si_pair(long re, long im, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_set_si(z.re_, re, MPFR_RNDN);
    mpfr_set_si(z.im_, im, MPFR_RNDN);
    return z;
}
CBall CBall::from_ratio(long num, long den, mpfr_prec_t prec) {
    if (den == 0) throw DomainError("from_ratio: zero denominator");
    CBall z(prec);
    mpfr_set_si(z.re_, num, MPFR_RNDN);
    int t = mpfr_div_si(z.re_, z.re_, den, MPFR_RNDN);
    if (t != 0) z.rad_ = z.mid_round_slack(1);
    return z;
}
CBall CBall::from_doubles(double re, double im, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_set_d(z.re_, re, MPFR_RNDN);
    mpfr_set_d(z.im_, im, MPFR_RNDN);
    return z;
}
CBall CBall::from_decimal(const std::string& re, const std::string& im, mpfr_prec_t prec) {
    CBall z(prec);
    if (mpfr_set_str(z.re_, re.c_str(), 10, MPFR_RNDN) != 0)
        throw DomainError("from_decimal: bad real part '" + re + "'");
    if (mpfr_set_str(z.im_, im.c_str(), 10, MPFR_RNDN) != 0)
        throw DomainError("from_decimal: bad imaginary part '" + im + "'");
    z.rad_ = z.mid_round_slack(2);   // string parse: assume inexact
    return z;
}
CBall CBall::pi(mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_const_pi(z.re_, MPFR_RNDN);
    z.rad_ = z.mid_round_slack(1);
    return z;
}
CBall CBall::i_unit(mpfr_prec_t prec) { return from_si_pair(0, 1, prec); }
CBall CBall::sqrt_ui(unsigned long n, mpfr_prec_t prec) {
    CBall z(prec);
    mpfr_sqrt_ui(z.re_, n, MPFR_RNDN);
    z.rad_ = z.mid_round_slack(1);
    return z;
}
CBall CBall::from_mid(mpfr_srcptr re, mpfr_srcptr im, mpfr_prec_t prec) {
    CBall z(prec);
    int t1 = mpfr_set(z.re_, re, MPFR_RNDN);
    int t2 = mpfr_set(z.im_, im, MPFR_RNDN);
    if (t1 != 0 || t2 != 0) z.rad_ = z.mid_round_slack(1);
    return z;
}

CBall CBall::at_precision(mpfr_prec_t prec) const {
    CBall z(prec);
    int t1 = mpfr_set(z.re_, re_, MPFR_RNDN);
    int t2 = mpfr_set(z.im_, im_, MPFR_RNDN);
    z.rad_ = rad_;
    if (t1 != 0 || t2 != 0) z.rad_ += z.mid_round_slack(1);
    return z;
}

UReal CBall::mid_round_slack(int ops) const {
    UReal s;
    mpfr_t t;
    mpfr_init2(t, UReal::kPrec);
    mpfr_abs(t, re_, MPFR_RNDU);
    mpfr_abs(s.raw(), im_, MPFR_RNDU);
    mpfr_add(s.raw(), s.raw(), t, MPFR_RNDU);
    mpfr_mul_2si(s.raw(), s.raw(), ops + 1 - static_cast<long>(prec_), MPFR_RNDU);
    mpfr_clear(t);
    return s;
}

UReal CBall::abs_ub() const {
    UReal s;
    mpfr_hypot(s.raw(), re_, im_, MPFR_RNDU);
    mpfr_add(s.raw(), s.raw(), rad_.raw(), MPFR_RNDU);
    return s;
}
UReal CBall::abs_lb_as_ureal() const {
    UReal s;
    mpfr_t h;
    mpfr_init2(h, UReal::kPrec);
    mpfr_hypot(h, re_, im_, MPFR_RNDD);
    mpfr_sub(h, h, rad_.raw(), MPFR_RNDD);
    if (mpfr_sgn(h) > 0) mpfr_set(s.raw(), h, MPFR_RNDD);
    mpfr_clear(h);
    return s;
}
bool CBall::contains_zero() const {
    UReal lb = abs_lb_as_ureal();
    return lb.is_zero();
}
bool CBall::is_nonzero() const { return !contains_zero(); }
UReal CBall::mid_dist_ub(const CBall& o) const {
    mpfr_t dr, di;
    mpfr_init2(dr, UReal::kPrec);
    mpfr_init2(di, UReal::kPrec);
    mpfr_sub(dr, re_, o.re_, MPFR_RNDA);
    mpfr_sub(di, im_, o.im_, MPFR_RNDA);
    UReal s;
    mpfr_hypot(s.raw(), dr, di, MPFR_RNDU);
    mpfr_clear(dr);
    mpfr_clear(di);
    return s;
}
UReal CBall::mid_dist_lb(const CBall& o) const {
    mpfr_t dr, di, h;
    mpfr_init2(dr, UReal::kPrec);
    mpfr_init2(di, UReal::kPrec);
    mpfr_init2(h, UReal::kPrec);
    // RNDZ keeps |rounded difference| <= |exact difference|
    mpfr_sub(dr, re_, o.re_, MPFR_RNDZ);
    mpfr_sub(di, im_, o.im_, MPFR_RNDZ);
    mpfr_hypot(h, dr, di, MPFR_RNDD);
    UReal s;
    if (mpfr_sgn(h) > 0) mpfr_set(s.raw(), h, MPFR_RNDD);
    mpfr_clear(dr);
    mpfr_clear(di);
    mpfr_clear(h);
    return s;
}
bool CBall::certifiably_distinct(const CBall& o) const {
    UReal rr = rad_ + o.rad_;
    UReal d = mid_dist_lb(o);
    return rr < d;
}
bool CBall::contains(const CBall& o) const {
    UReal d = mid_dist_ub(o) + o.rad_;
    return d <= rad_;
}
bool CBall::contains_si_pair(long re, long im) const {
    CBall z = from_si_pair(re, im, prec_);
    UReal d = mid_dist_ub(z);
    return d <= rad_;
}
void CBall::add_error(const UReal& r) { rad_ += r; }
void CBall::add_error_pow2(long e) { rad_ += UReal::pow2(e); }

CBall CBall::operator+(const CBall& o) const {
    mpfr_prec_t p = std::max(prec_, o.prec_);
    CBall z(p);
    int t1 = mpfr_add(z.re_, re_, o.re_, MPFR_RNDN);
    int t2 = mpfr_add(z.im_, im_, o.im_, MPFR_RNDN);
    z.rad_ = rad_ + o.rad_;
    if (t1 != 0 || t2 != 0) z.rad_ += z.mid_round_slack(1);
    return z;
}
CBall CBall::operator-(const CBall& o) const {
    mpfr_prec_t p = std::max(prec_, o.prec_);
    CBall z(p);
    int t1 = mpfr_sub(z.re_, re_, o.re_, MPFR_RNDN);
    int t2 = mpfr_sub(z.im_, im_, o.im_, MPFR_RNDN);
    z.rad_ = rad_ + o.rad_;
    if (t1 != 0 || t2 != 0) z.rad_ += z.mid_round_slack(1);
    return z;
}
CBall CBall::operator-() const {
    CBall z(prec_);
    mpfr_neg(z.re_, re_, MPFR_RNDN);
    mpfr_neg(z.im_, im_, MPFR_RNDN);
    z.rad_ = rad_;
    return z;
}
CBall CBall::conj() const {
    CBall z(prec_);
    mpfr_set(z.re_, re_, MPFR_RNDN);
    mpfr_neg(z.im_, im_, MPFR_RNDN);
    z.rad_ = rad_;
    return z;
}
CBall CBall::mul_i() const {
    CBall z(prec_);
    mpfr_neg(z.re_, im_, MPFR_RNDN);
    mpfr_set(z.im_, re_, MPFR_RNDN);
    z.rad_ = rad_;
    return z;
}
CBall CBall::mul_si(long s) const {
    CBall z(prec_);
    int t1 = mpfr_mul_si(z.re_, re_, s, MPFR_RNDN);
    int t2 = mpfr_mul_si(z.im_, im_, s, MPFR_RNDN);
    UReal m = UReal::from_double(std::fabs(static_cast<double>(s)));
    z.rad_ = rad_ * m;
    if (t1 != 0 || t2 != 0) z.rad_ += z.mid_round_slack(1);
    return z;
}
CBall CBall::div_si(long s) const {
    if (s == 0) throw DomainError("div_si by zero");
    CBall z(prec_);
    int t1 = mpfr_div_si(z.re_, re_, s, MPFR_RNDN);
    int t2 = mpfr_div_si(z.im_, im_, s, MPFR_RNDN);
    UReal m;
    mpfr_set_ui(m.raw(), 1, MPFR_RNDU);
    unsigned long as = s > 0 ? static_cast<unsigned long>(s)
                             : -static_cast<unsigned long>(s);
    mpfr_div_ui(m.raw(), m.raw(), as, MPFR_RNDU);
    z.rad_ = rad_ * m;
    if (t1 != 0 || t2 != 0) z.rad_ += z.mid_round_slack(1);
    return z;
}

CBall CBall::operator*(const CBall& o) const {
    mpfr_prec_t p = std::max(prec_, o.prec_);
    CBall z(p);
    // fused a*c - b*d and a*d + b*c: one rounding per component
    int t1 = mpfr_fmms(z.re_, re_, o.re_, im_, o.im_, MPFR_RNDN);
    int t2 = mpfr_fmma(z.im_, re_, o.im_, im_, o.re_, MPFR_RNDN);
    if (rad_.is_zero() && o.rad_.is_zero()) {
        if (t1 != 0 || t2 != 0) z.rad_ = z.mid_round_slack(1);
        return z;
    }
    UReal m1;
    mpfr_hypot(m1.raw(), re_, im_, MPFR_RNDU);
    UReal m2;
    mpfr_hypot(m2.raw(), o.re_, o.im_, MPFR_RNDU);
    z.rad_ = m1 * o.rad_ + m2 * rad_ + rad_ * o.rad_;
    if (t1 != 0 || t2 != 0) z.rad_ += z.mid_round_slack(1);
    return z;
}
CBall CBall::sqr() const { return (*this) * (*this); }

CBall CBall::inv() const {
    UReal lb = abs_lb_as_ureal();
    if (lb.is_zero()) throw DomainError("inv of ball containing zero");
    CBall z(prec_);
    mpfr_t n;
    mpfr_init2(n, prec_);
    mpfr_fmma(n, re_, re_, im_, im_, MPFR_RNDN);
    mpfr_div(z.re_, re_, n, MPFR_RNDN);
    mpfr_div(z.im_, im_, n, MPFR_RNDN);
    mpfr_neg(z.im_, z.im_, MPFR_RNDN);
    mpfr_clear(n);
    // |1/w - 1/m| <= r / (|m|_lb * (|m|_lb - r)) for every w in the ball
    mpfr_t ml, den;
    mpfr_init2(ml, UReal::kPrec);
    mpfr_init2(den, UReal::kPrec);
    mpfr_hypot(ml, re_, im_, MPFR_RNDD);
    mpfr_sub(den, ml, rad_.raw(), MPFR_RNDD);
    mpfr_mul(den, den, ml, MPFR_RNDD);
    UReal extra;
    mpfr_div(extra.raw(), rad_.raw(), den, MPFR_RNDU);
    mpfr_clear(ml);
    mpfr_clear(den);
    z.rad_ = extra + z.mid_round_slack(3);
    return z;
}
CBall CBall::operator/(const CBall& o) const { return (*this) * o.inv(); }

CBall CBall::pow_ui(unsigned long e) const {
    CBall acc = from_si(1, prec_);
    CBall base = *this;
    while (e > 0) {
        if (e & 1UL) acc = acc * base;
        e >>= 1UL;
        if (e > 0) base = base.sqr();
    }
    return acc;
}

CBall CBall::sqrt() const {
    CBall z(prec_);
    mpfr_t h, t;
    mpfr_init2(h, prec_);
    mpfr_init2(t, prec_);
    mpfr_hypot(h, re_, im_, MPFR_RNDN);
    if (mpfr_zero_p(h) && rad_.is_zero()) {
        mpfr_clear(h);
        mpfr_clear(t);
        return z; // exact zero
    }
    // principal branch: s_re = sqrt((h+re)/2); s_im = im/(2 s_re)  (re >= 0)
    //                   s_im = sign(im) sqrt((h-re)/2); s_re = im/(2 s_im) (re < 0)
    if (mpfr_sgn(re_) >= 0) {
        mpfr_add(t, h, re_, MPFR_RNDN);
        mpfr_div_2ui(t, t, 1, MPFR_RNDN);
        mpfr_sqrt(z.re_, t, MPFR_RNDN);
        if (mpfr_zero_p(z.re_)) {
            mpfr_set_zero(z.im_, 1);
        } else {
            mpfr_div(z.im_, im_, z.re_, MPFR_RNDN);
            mpfr_div_2ui(z.im_, z.im_, 1, MPFR_RNDN);
        }
    } else {
        mpfr_sub(t, h, re_, MPFR_RNDN);
        mpfr_div_2ui(t, t, 1, MPFR_RNDN);
        mpfr_sqrt(z.im_, t, MPFR_RNDN);
        if (mpfr_sgn(im_) < 0) mpfr_neg(z.im_, z.im_, MPFR_RNDN);
        mpfr_div(z.re_, im_, z.im_, MPFR_RNDN);
        mpfr_div_2ui(z.re_, z.re_, 1, MPFR_RNDN);
    }
    mpfr_clear(t);

    UReal lb = abs_lb_as_ureal();
    if (lb.is_zero()) {
        // ball contains 0: cover both branches
        UReal big = abs_ub();
        mpfr_sqrt(big.raw(), big.raw(), MPFR_RNDU);
        UReal sm;
        mpfr_hypot(sm.raw(), z.re_, z.im_, MPFR_RNDU);
        z.rad_ = big + sm;
    } else {
        // |sqrt(w)-sqrt(m)| <= r / (2 sqrt(|m|-r)); valid along the branch
        // analytic on the disk (0 outside the disk)
        mpfr_t s;
        mpfr_init2(s, UReal::kPrec);
        mpfr_set(s, lb.raw(), MPFR_RNDD);
        mpfr_sqrt(s, s, MPFR_RNDD);
        mpfr_mul_2ui(s, s, 1, MPFR_RNDD);
        UReal extra;
        mpfr_div(extra.raw(), rad_.raw(), s, MPFR_RNDU);
        mpfr_clear(s);
        z.rad_ = extra + z.mid_round_slack(4);
    }
    mpfr_clear(h);
    return z;
}

CBall CBall::exp() const {
    CBall z(prec_);
    mpfr_t ex, sn, cs;
    mpfr_init2(ex, prec_);
    mpfr_init2(sn, prec_);
    mpfr_init2(cs, prec_);
    mpfr_exp(ex, re_, MPFR_RNDN);
    mpfr_sin_cos(sn, cs, im_, MPFR_RNDN);
    mpfr_mul(z.re_, ex, cs, MPFR_RNDN);
    mpfr_mul(z.im_, ex, sn, MPFR_RNDN);
    // |e^w - e^m| <= |e^m| (e^r - 1)
    UReal em;
    mpfr_abs(em.raw(), ex, MPFR_RNDU);
    UReal er;
    mpfr_set(er.raw(), rad_.raw(), MPFR_RNDU);
    mpfr_expm1(er.raw(), er.raw(), MPFR_RNDU);
    mpfr_clear(ex);
    mpfr_clear(sn);
    mpfr_clear(cs);
    z.rad_ = em * er + z.mid_round_slack(3);
    return z;
}

CBall CBall::re_part() const {
    CBall z(prec_);
    mpfr_set(z.re_, re_, MPFR_RNDN);
    z.rad_ = rad_;
    return z;
}
CBall CBall::im_part() const {
    CBall z(prec_);
    mpfr_set(z.re_, im_, MPFR_RNDN);
    z.rad_ = rad_;
    return z;
}

std::complex<double> CBall::mid_cd() const {
    return {mpfr_get_d(re_, MPFR_RNDN), mpfr_get_d(im_, MPFR_RNDN)};
}
double CBall::mid_re_d() const { return mpfr_get_d(re_, MPFR_RNDN); }
double CBall::mid_im_d() const { return mpfr_get_d(im_, MPFR_RNDN); }

static std::string mpfr_decimal(mpfr_srcptr x, size_t digits) {
    char fmt[32];
    std::snprintf(fmt, sizeof(fmt), "%%.%zuRg", digits);
    char* s = nullptr;
    if (mpfr_asprintf(&s, fmt, x) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string CBall::re_string(size_t digits) const { return mpfr_decimal(re_, digits); }
std::string CBall::im_string(size_t digits) const { return mpfr_decimal(im_, digits); }
std::string CBall::rad_string() const { return rad_.to_string(); }
std::string CBall::to_string(size_t digits) const {
    std::string s = "(" + re_string(digits);
    s += mpfr_sgn(im_) < 0 ? " - " : " + ";
    mpfr_t a;
    mpfr_init2(a, prec_);
    mpfr_abs(a, im_, MPFR_RNDN);
    s += mpfr_decimal(a, digits) + "i";
    mpfr_clear(a);
    s += ") +/- " + rad_.to_string();
    return s;
}

bool CBall::mid_less(const CBall& a, const CBall& b) {
    int c = mpfr_cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return mpfr_cmp(a.im_, b.im_) < 0;
}

} // namespace cmlj
