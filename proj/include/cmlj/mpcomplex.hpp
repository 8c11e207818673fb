#ifndef CMLJ_MPCOMPLEX_HPP
#define CMLJ_MPCOMPLEX_HPP

#include <complex>
#include <utility>

#include <mpfr.h>

#include "cmlj/ball.hpp"

namespace cmlj {

// Midpoint-only complex number used inside iterative solvers; no radius
// bookkeeping. Results get certified afterwards through CBall evaluation.
class MpComplex {
public:
    explicit MpComplex(mpfr_prec_t prec = 256) : prec_(prec) {
        mpfr_init2(re_, prec);
        mpfr_init2(im_, prec);
        mpfr_set_zero(re_, 1);
        mpfr_set_zero(im_, 1);
    }
    MpComplex(const MpComplex& o) : prec_(o.prec_) {
        mpfr_init2(re_, prec_);
        mpfr_init2(im_, prec_);
        mpfr_set(re_, o.re_, MPFR_RNDN);
        mpfr_set(im_, o.im_, MPFR_RNDN);
    }
    MpComplex(MpComplex&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(re_, prec_);
        mpfr_init2(im_, prec_);
        mpfr_swap(re_, o.re_);
        mpfr_swap(im_, o.im_);
    }
    MpComplex& operator=(const MpComplex& o) {
        if (this != &o) {
            if (prec_ != o.prec_) {
                mpfr_set_prec(re_, o.prec_);
                mpfr_set_prec(im_, o.prec_);
                prec_ = o.prec_;
            }
            mpfr_set(re_, o.re_, MPFR_RNDN);
            mpfr_set(im_, o.im_, MPFR_RNDN);
        }
        return *this;
    }
    MpComplex& operator=(MpComplex&& o) noexcept {
        if (this != &o) {
            mpfr_swap(re_, o.re_);
            mpfr_swap(im_, o.im_);
            std::swap(prec_, o.prec_);
        }
        return *this;
    }
    ~MpComplex() {
        mpfr_clear(re_);
        mpfr_clear(im_);
    }

    static MpComplex from_ball_mid(const CBall& b, mpfr_prec_t prec) {
        MpComplex z(prec);
        mpfr_set(z.re_, b.re_mid(), MPFR_RNDN);
        mpfr_set(z.im_, b.im_mid(), MPFR_RNDN);
        return z;
    }
    static MpComplex from_cd(std::complex<double> c, mpfr_prec_t prec) {
        MpComplex z(prec);
        mpfr_set_d(z.re_, c.real(), MPFR_RNDN);
        mpfr_set_d(z.im_, c.imag(), MPFR_RNDN);
        return z;
    }
    static MpComplex from_si(long v, mpfr_prec_t prec) {
        MpComplex z(prec);
        mpfr_set_si(z.re_, v, MPFR_RNDN);
        return z;
    }

    CBall to_ball() const { return CBall::from_mid(re_, im_, prec_); }
    std::complex<double> to_cd() const {
        return {mpfr_get_d(re_, MPFR_RNDN), mpfr_get_d(im_, MPFR_RNDN)};
    }
    mpfr_prec_t precision() const { return prec_; }
    mpfr_srcptr re() const { return re_; }
    mpfr_srcptr im() const { return im_; }
    mpfr_ptr re() { return re_; }
    mpfr_ptr im() { return im_; }

    MpComplex operator+(const MpComplex& o) const {
        MpComplex z(prec_);
        mpfr_add(z.re_, re_, o.re_, MPFR_RNDN);
        mpfr_add(z.im_, im_, o.im_, MPFR_RNDN);
        return z;
    }
    MpComplex operator-(const MpComplex& o) const {
        MpComplex z(prec_);
        mpfr_sub(z.re_, re_, o.re_, MPFR_RNDN);
        mpfr_sub(z.im_, im_, o.im_, MPFR_RNDN);
        return z;
    }
    MpComplex operator*(const MpComplex& o) const {
        MpComplex z(prec_);
        mpfr_fmms(z.re_, re_, o.re_, im_, o.im_, MPFR_RNDN);
        mpfr_fmma(z.im_, re_, o.im_, im_, o.re_, MPFR_RNDN);
        return z;
    }
    MpComplex operator/(const MpComplex& o) const {
        MpComplex z(prec_);
        mpfr_t n;
        mpfr_init2(n, prec_);
        mpfr_fmma(n, o.re_, o.re_, o.im_, o.im_, MPFR_RNDN);
        mpfr_fmma(z.re_, re_, o.re_, im_, o.im_, MPFR_RNDN);
        mpfr_fmms(z.im_, im_, o.re_, re_, o.im_, MPFR_RNDN);
        mpfr_div(z.re_, z.re_, n, MPFR_RNDN);
        mpfr_div(z.im_, z.im_, n, MPFR_RNDN);
        mpfr_clear(n);
        return z;
    }
    MpComplex& operator+=(const MpComplex& o) {
        mpfr_add(re_, re_, o.re_, MPFR_RNDN);
        mpfr_add(im_, im_, o.im_, MPFR_RNDN);
        return *this;
    }
    MpComplex& operator-=(const MpComplex& o) {
        mpfr_sub(re_, re_, o.re_, MPFR_RNDN);
        mpfr_sub(im_, im_, o.im_, MPFR_RNDN);
        return *this;
    }

    double abs_d() const {
        mpfr_t h;
        mpfr_init2(h, 64);
        mpfr_hypot(h, re_, im_, MPFR_RNDN);
        double d = mpfr_get_d(h, MPFR_RNDN);
        mpfr_clear(h);
        return d;
    }
    // log2 of |z|, safe against double under/overflow
    double abs_log2() const {
        mpfr_t h;
        mpfr_init2(h, 64);
        mpfr_hypot(h, re_, im_, MPFR_RNDN);
        if (mpfr_zero_p(h)) {
            mpfr_clear(h);
            return -1e18;
        }
        mpfr_log2(h, h, MPFR_RNDN);
        double d = mpfr_get_d(h, MPFR_RNDN);
        mpfr_clear(h);
        return d;
    }
    bool is_zero() const { return mpfr_zero_p(re_) && mpfr_zero_p(im_); }

private:
    mpfr_t re_, im_;
    mpfr_prec_t prec_;
};

} // namespace cmlj

#endif
