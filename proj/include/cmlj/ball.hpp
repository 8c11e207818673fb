#ifndef CMLJ_BALL_HPP
#define CMLJ_BALL_HPP

#include <complex>
#include <cstdint>
#include <string>

#include <mpfr.h>

#include "cmlj/errors.hpp"

namespace cmlj {

// Nonnegative 64-bit-mantissa real used for radii and norm bounds.
// All arithmetic rounds upward, so values stay valid as upper bounds.
class UReal {
public:
    UReal();
    UReal(const UReal& o);
    UReal(UReal&& o) noexcept;
    UReal& operator=(const UReal& o);
    UReal& operator=(UReal&& o) noexcept;
    ~UReal();

    static UReal zero();
    static UReal from_double(double d);      // d < 0 clamps to 0
    static UReal pow2(long e);               // 2^e
    double to_double() const;                // saturates at HUGE_VAL
    std::string to_string() const;

    UReal operator+(const UReal& o) const;
    UReal operator*(const UReal& o) const;
    UReal& operator+=(const UReal& o);
    bool operator<(const UReal& o) const;
    bool operator<=(const UReal& o) const;
    bool is_zero() const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static constexpr mpfr_prec_t kPrec = 64;

private:
    mpfr_t v_;
};

// Complex ball: arbitrary-precision midpoint plus one Euclidean error radius.
// Every operation returns a ball that contains the exact image of every point
// of the input balls; midpoint rounding is folded into the radius.
class CBall {
public:
    explicit CBall(mpfr_prec_t prec = 256);
    CBall(const CBall& o);
    CBall(CBall&& o) noexcept;
    CBall& operator=(const CBall& o);
    CBall& operator=(CBall&& o) noexcept;
    ~CBall();

    // --- constructors / setters ---
    static CBall from_si(long re, mpfr_prec_t prec = 256);
    static CBall from_si_pair(long re, long im, mpfr_prec_t prec = 256);
    static CBall from_ratio(long num, long den, mpfr_prec_t prec = 256);
    static CBall from_doubles(double re, double im, mpfr_prec_t prec = 256);
    // Decimal strings; parse error throws DomainError. Radius covers parse rounding.
    static CBall from_decimal(const std::string& re, const std::string& im,
                              mpfr_prec_t prec = 256);
    static CBall pi(mpfr_prec_t prec = 256);
    static CBall i_unit(mpfr_prec_t prec = 256);
    static CBall sqrt_ui(unsigned long n, mpfr_prec_t prec = 256);
    // exact midpoint copy; slack added only if rounding occurred
    static CBall from_mid(mpfr_srcptr re, mpfr_srcptr im, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    CBall at_precision(mpfr_prec_t prec) const;

    mpfr_srcptr re_mid() const { return re_; }
    mpfr_srcptr im_mid() const { return im_; }
    const UReal& radius() const { return rad_; }

    // --- arithmetic ---
    CBall operator+(const CBall& o) const;
    CBall operator-(const CBall& o) const;
    CBall operator*(const CBall& o) const;
    CBall operator/(const CBall& o) const;  // throws DomainError if o contains 0
    CBall operator-() const;
    CBall conj() const;
    CBall mul_i() const;                     // multiply by i (exact)
    CBall mul_si(long s) const;
    CBall div_si(long s) const;
    CBall sqr() const;
    CBall inv() const;
    CBall pow_ui(unsigned long e) const;

    // Square root: the analytic branch on the disk that agrees with the
    // principal square root at the midpoint (for disks straddling the
    // negative real axis this is that branch's continuation, not pointwise
    // principal values). If the ball contains 0 the result is a coarse ball
    // covering both branches everywhere.
    CBall sqrt() const;
    CBall exp() const;

    CBall re_part() const;                   // ball of the real part (im = 0)
    CBall im_part() const;

    // --- bounds and predicates ---
    UReal abs_ub() const;                    // upper bound of |z| over the ball
    UReal abs_lb_as_ureal() const;           // lower bound (0 if contains 0)
    bool contains_zero() const;
    bool is_nonzero() const;                 // certified
    bool certifiably_distinct(const CBall& o) const;
    bool contains(const CBall& o) const;     // o entirely inside this ball
    bool contains_si_pair(long re, long im) const;
    UReal mid_dist_ub(const CBall& o) const;
    UReal mid_dist_lb(const CBall& o) const; // lower bound, 0 if overlapping mids
    void add_error(const UReal& r);
    void add_error_pow2(long e);

    // --- conversions ---
    std::complex<double> mid_cd() const;
    double mid_re_d() const;
    double mid_im_d() const;
    std::string re_string(size_t digits) const;
    std::string im_string(size_t digits) const;
    std::string rad_string() const;
    std::string to_string(size_t digits = 20) const;

    // deterministic midpoint ordering (re, then im)
    static bool mid_less(const CBall& a, const CBall& b);

private:
    void init(mpfr_prec_t prec);
    UReal mid_round_slack(int ops) const;    // (|re|+|im|) * 2^(ops+1-prec)

    mpfr_t re_, im_;
    UReal rad_;
    mpfr_prec_t prec_;
};

} // namespace cmlj

#endif
