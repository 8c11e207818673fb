#ifndef CMLJ_UNIPOLY_HPP
#define CMLJ_UNIPOLY_HPP

#include <cstdint>
#include <vector>

#include "cmlj/ball.hpp"

namespace cmlj {

// Univariate polynomial with ball coefficients, lowest degree first.
struct UniPoly {
    std::vector<CBall> coeffs;

    UniPoly() = default;
    explicit UniPoly(std::vector<CBall> c) : coeffs(std::move(c)) {}

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool leading_nonzero() const {
        return !coeffs.empty() && coeffs.back().is_nonzero();
    }
    mpfr_prec_t precision() const {
        mpfr_prec_t p = 2;
        for (const auto& c : coeffs) p = std::max(p, c.precision());
        return p;
    }

    UniPoly derivative() const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly scale(const CBall& s) const;
    // p(a*x + b) for exact integer a, b
    UniPoly compose_linear_si(long a, long b) const;
    // x^k * p
    UniPoly shift_up(int k) const;

    static UniPoly from_si_coeffs(const std::vector<long>& c, mpfr_prec_t prec = 256);
    // monic linear factor (x - r)
    static UniPoly linear(const CBall& r);
    static UniPoly constant(const CBall& c);
};

// Ball containing p(z) for every polynomial/point in the input balls.
CBall poly_eval(const UniPoly& p, const CBall& z);

// All `degree` roots as certified balls (Aberth-Ehrlich on the midpoints,
// a-posteriori enclosure radii). Deterministic for a fixed seed.
// Throws PrecisionExhausted if root clusters cannot be separated at the
// maximum precision tried (multiple roots, or budget too small).
std::vector<CBall> poly_roots(const UniPoly& p, mpfr_prec_t target_precision,
                              std::uint64_t seed = 0);

// Multiplicity-tolerant variant: root approximations are merged into clusters
// of width 2^cluster_log2_tol. Used by the square-condition and census checks
// where double roots are the expected case.
struct RootCluster {
    CBall center;
    int multiplicity = 1;
};
std::vector<RootCluster> poly_roots_clustered(const UniPoly& p, mpfr_prec_t prec,
                                              long cluster_log2_tol,
                                              std::uint64_t seed = 0);

} // namespace cmlj

#endif
