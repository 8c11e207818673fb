#ifndef CMLJ_RAMSYS_HPP
#define CMLJ_RAMSYS_HPP

#include <optional>
#include <string>
#include <vector>

#include "cmlj/multipoly.hpp"
#include "cmlj/qforms.hpp"
#include "cmlj/unipoly.hpp"

namespace cmlj {

// One squared product block of an identity, e.g. prod (x - alpha_i)^2.
// Root form: the unknowns are the roots themselves. Coefficient form: the
// unknowns are the non-leading coefficients of the monic polynomial that gets
// squared.
struct Block {
    char role = 'A';   // 'A', 'B', 'G', 'D'
    int size = 0;      // number of roots of the unsquared factor
    bool coeff_form = false;
    int first_unknown = -1;
};

struct PolySystem {
    long long D = 0;
    SystemVariant variant = SystemVariant::S1;
    std::vector<std::string> unknowns; // index 0 = k, index 1 = lambda
    std::vector<MultiPoly> equations;  // size 2D
    std::vector<std::vector<MultiPoly>> jacobian;
    std::vector<Block> blocks;         // A, B, G, D order

    // D=2 special cases carry the pole choice and the split quadratic instead
    // of a variant: q_case in {0: Q=x, 1: Q=x-1, 2: Q=x-lambda},
    // split in {0: P, 1: P-Q, 2: P-lambda Q}
    int d2_q = -1;
    int d2_split = -1;
    bool is_d2() const { return d2_q >= 0; }

    int k_index() const { return 0; }
    int lambda_index() const { return 1; }
    std::string name() const;
};

PolySystem build_system(long long D, SystemVariant variant);

struct D2Case {
    std::string q_label; // "x", "x-1", "x-lambda"
    std::vector<PolySystem> subsystems; // one per split quadratic
};
std::vector<D2Case> build_d2_cases();

// Meromorphic h = num/den with its Legendre parameter.
struct HFunction {
    UniPoly num;
    UniPoly den;
    CBall lambda;

    int degree() const { return num.degree(); }
    CBall eval(const CBall& x) const;
};

// point values indexed like PolySystem::unknowns
using Assignment = std::vector<CBall>;

std::vector<CBall> residual(const PolySystem& sys, const Assignment& point);

// Builds h from a solution point; throws DegenerateSolution when critical
// points collide or k = 0 / lambda in {0,1} cannot be excluded.
HFunction assemble_h(const PolySystem& sys, const Assignment& point);

// All finite critical-ish points of the solution: block roots, with coeff-form
// blocks resolved through poly_roots.
std::vector<CBall> block_root_values(const PolySystem& sys, const Assignment& point,
                                     mpfr_prec_t prec);

// True iff h(h-1)(h-lambda) / (x(x-1)(x-lambda)) is a square in C(x),
// decided by clustering roots of the numerator and denominator.
bool verify_square_condition(const HFunction& h);

// Ramification census over the fibers of 0, 1, lambda, infinity.
struct CensusFiber {
    std::vector<int> multiplicities; // sorted ascending, infinity included for the pole fiber
};
struct Census {
    CensusFiber over_zero, over_one, over_lambda, over_infinity;
};
Census ramification_census(const HFunction& h);
// matches the odd pattern (1 simple + (D-1)/2 doubles over each value) or one
// of the two even patterns
bool census_matches(const Census& c, long long D);

enum class S3Move { OneMinus, Reciprocal };
// (1 - h(1-x), 1-lambda) or (h(lambda x)/lambda, 1/lambda)
HFunction s3_transport(const HFunction& h, S3Move move);

// the six S3 images of lambda
std::vector<CBall> s3_orbit(const CBall& lambda);

} // namespace cmlj

#endif
