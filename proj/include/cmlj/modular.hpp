#ifndef CMLJ_MODULAR_HPP
#define CMLJ_MODULAR_HPP

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cmlj/ball.hpp"
#include "cmlj/qforms.hpp"
#include "cmlj/unipoly.hpp"

namespace cmlj {

// q-expansion coefficients of j, starting at the q^-1 term
inline const std::vector<long long>& j_expansion_coeffs() {
    static const std::vector<long long> c = {1,        744,       196884,
                                             21493760, 864299970, 20245856256LL};
    return c;
}

// j(lambda) = 256 (lambda^2 - lambda + 1)^3 / (lambda^2 - lambda)^2
CBall j_of_lambda(const CBall& lambda);

enum class QuadShape {
    PlusMuPlusOne,   // lambda^2 + mu lambda + 1 = 0  ->  256 (mu+1)^3 / (mu+2)
    MinusMuPlusMu    // lambda^2 - mu lambda + mu = 0 ->  256 (mu-1)^3 / mu
};
CBall j_from_quadratic(const CBall& mu, QuadShape shape);

// Truncated q-expansion with a heuristic (non-rigorous) tail term
// |q|^n_terms * 10^11 folded into the radius. even_only keeps only even
// q-powers (the purely-imaginary-q shortcut).
CBall j_q_expansion(const CBall& tau, int n_terms, bool even_only = false);

struct ThetaJ {
    CBall lambda_tau; // theta2^4/theta3^4
    CBall j_tau;
};
// Independent high-precision oracle via theta null values in the nome
// exp(i pi tau).
ThetaJ j_theta_oracle(const CBall& tau, mpfr_prec_t precision);

// Integer polynomial of degree <= 2 annihilating the value, smallest degree
// first; nullopt when nothing certifies under the height bound.
struct AlgebraicCandidate {
    int degree = 0;
    std::vector<std::string> min_poly; // integer strings, low degree first
    CBall approx;
    std::optional<CBall> conjugate_approx;

    UniPoly poly_ball(mpfr_prec_t prec) const;
    std::string pretty() const;
};
std::optional<AlgebraicCandidate> recognize_quadratic(const CBall& value,
                                                      const mpz_class& height_bound);
std::optional<AlgebraicCandidate> recognize_quadratic(const CBall& value,
                                                      long long height_bound = 1000000000000000000LL);

struct HilbertGenerator {
    AlgebraicCandidate j_value;
    std::string field_label; // Q(sqrt(a^2-4D))
    OrderDesc order;
};
HilbertGenerator hilbert_generator(const TauRep& t, mpfr_prec_t precision);

// For each tau, the index of the matching j value; certifiably unique per
// distinct j. Throws AmbiguousMatch if the oracle cannot separate candidates.
std::vector<int> match(const std::vector<CBall>& j_values,
                       const std::vector<ExactTau>& taus, int n_terms,
                       mpfr_prec_t oracle_precision = 256);

} // namespace cmlj

#endif
