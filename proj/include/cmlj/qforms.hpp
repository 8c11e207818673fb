#ifndef CMLJ_QFORMS_HPP
#define CMLJ_QFORMS_HPP

#include <array>
#include <string>
#include <vector>

#include "cmlj/ball.hpp"

namespace cmlj {

// Integer binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    long long a = 0, b = 0, c = 0;

    long long disc() const { return b * b - 4 * a * c; }
    long long content() const;
    bool positive_definite() const { return a > 0 && c > 0 && disc() < 0; }
    bool is_reduced() const;
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const;
};

struct Mat2 {
    // [[p, q], [r, s]]
    long long p = 1, q = 0, r = 0, s = 1;
    long long det() const { return p * s - q * r; }
    Mat2 operator*(const Mat2& o) const {
        return {p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r, r * o.q + s * o.s};
    }
};

// Period representation tau = (u + sqrt(4D - a^2) i) / (2b).
struct TauRep {
    long long D = 0, a = 0, u = 0, b = 1;

    bool valid() const;
    CBall tau(mpfr_prec_t prec = 256) const;
};

struct OrderDesc {
    long long field_disc = 0;        // discriminant of Q(sqrt(a^2-4D))
    long long conductor_divisor = 1; // the divisor bound v
};

enum class SystemVariant { S1 = 1, S2 = 2, S3 = 3, S4 = 4, S5 = 5, S6 = 6 };

inline int variant_index(SystemVariant v) { return static_cast<int>(v); }
inline bool variant_is_odd_family(SystemVariant v) { return variant_index(v) <= 3; }
std::string variant_name(SystemVariant v);

struct VariantPrediction {
    bool ambiguous = false;
    SystemVariant primary = SystemVariant::S2;
    SystemVariant secondary = SystemVariant::S2; // == primary unless ambiguous
};

QuadForm form_of(const TauRep& t);
QuadForm sl2_act(const QuadForm& f, const Mat2& m);
std::pair<QuadForm, Mat2> reduce_form(const QuadForm& f);
OrderDesc endo_order(const TauRep& t);
VariantPrediction predict_system(const TauRep& t);

// One SL2(Z)-orbit of period representations. Representations of the same
// period point through different traces a are merged as aliases (their reduced
// forms share a primitive part).
struct OrbitRep {
    TauRep rep;          // canonical representation (reduced form coefficients)
    QuadForm reduced;    // the reduced form (b = reduced.a, u = reduced.b)
    std::vector<TauRep> aliases;   // every merged representation, rep included
    std::vector<QuadForm> alias_forms;
    std::vector<VariantPrediction> alias_variants;

    // true iff every alias predicts exactly the multiplication-type system
    // (S1 for odd D, S4 for even D) that is excluded for perfect-square D
    bool square_policy_exempt(long long D) const;
};

std::vector<OrbitRep> enumerate_orbits(long long D, bool allow_square);
// flat TauRep view of enumerate_orbits
std::vector<TauRep> enumerate_reps(long long D, bool allow_square);

bool is_perfect_square(long long n);

// Exact quadratic point of the upper half plane: the root of
// A t^2 + B t + C (primitive, A > 0, negative discriminant) with Im > 0.
struct ExactTau {
    long long A = 1, B = 0, C = 1;

    static ExactTau from_taurep(const TauRep& t);
    static ExactTau from_quadratic(long long A, long long B, long long C);
    // image under [[p,q],[r,s]] with positive determinant
    ExactTau moebius(long long p, long long q, long long r, long long s) const;
    long long disc() const { return B * B - 4 * A * C; }
    CBall value(mpfr_prec_t prec = 256) const;
    // order of End(C/(Z+Z tau)): its discriminant equals disc()
    long long order_disc() const { return disc(); }
    std::string ring_label() const;
    bool operator==(const ExactTau& o) const { return A == o.A && B == o.B && C == o.C; }
};

} // namespace cmlj

#endif
