#ifndef CMLJ_MULTIPOLY_HPP
#define CMLJ_MULTIPOLY_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "cmlj/ball.hpp"
#include "cmlj/mpcomplex.hpp"

namespace cmlj {

// Sparse multivariate polynomial with exact rational coefficients.
// Exponent vectors all have length nvars.
class MultiPoly {
public:
    using Expo = std::vector<std::uint8_t>;

    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, const mpq_class& c);
    static MultiPoly constant_si(int nvars, long c);
    static MultiPoly var(int nvars, int index);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Expo, mpq_class>& terms() const { return terms_; }

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scale(const mpq_class& c) const;
    MultiPoly derivative(int var) const;

    std::complex<double> eval_cd(const std::vector<std::complex<double>>& pt) const;
    MpComplex eval_mp(const std::vector<MpComplex>& pt) const;
    CBall eval_ball(const std::vector<CBall>& pt) const;

    // compact rendering, mostly for diagnostics and JSON
    std::string to_string(const std::vector<std::string>& names) const;

    void add_term(const Expo& e, const mpq_class& c);

private:
    int nvars_;
    std::map<Expo, mpq_class> terms_;
};

// Polynomial in x whose coefficients live in Q[unknowns]; index = x-degree.
struct PolyInX {
    std::vector<MultiPoly> c;
    int nvars = 0;

    explicit PolyInX(int nv = 0) : nvars(nv) {}
    int degree() const { return static_cast<int>(c.size()) - 1; }

    static PolyInX constant(int nvars, const MultiPoly& m);
    // x + (poly)
    static PolyInX linear_minus(int nvars, const MultiPoly& sub);
    // x
    static PolyInX x_poly(int nvars);

    PolyInX operator*(const PolyInX& o) const;
    PolyInX operator-(const PolyInX& o) const;
    PolyInX operator+(const PolyInX& o) const;
    PolyInX scale_poly(const MultiPoly& m) const;
};

// exact ball from a rational (numerator/denominator fit in the ball precision
// or the radius covers rounding)
CBall ball_from_mpq(const mpq_class& q, mpfr_prec_t prec);

} // namespace cmlj

#endif
