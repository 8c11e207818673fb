#include "cmlj/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cmlj/errors.hpp"

namespace cmlj {

long long QuadForm::content() const {
    long long g = std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c));
    return g == 0 ? 1 : g;
}

bool QuadForm::is_reduced() const {
    if (!(std::llabs(b) <= a && a <= c)) return false;
    if ((std::llabs(b) == a || a == c) && b < 0) return false;
    return true;
}

bool QuadForm::operator<(const QuadForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

bool TauRep::valid() const {
    if (D < 1 || b < 1) return false;
    if (a * a >= 4 * D) return false; // |a| < 2 sqrt(D), strict
    long long n = u * u + 4 * D - a * a;
    return n % (4 * b) == 0;
}

CBall TauRep::tau(mpfr_prec_t prec) const {
    CBall root = CBall::sqrt_ui(static_cast<unsigned long>(4 * D - a * a), prec);
    CBall z = CBall::from_si(static_cast<long>(u), prec) + root.mul_i();
    return z.div_si(static_cast<long>(2 * b));
}

std::string variant_name(SystemVariant v) { return "S" + std::to_string(variant_index(v)); }

QuadForm form_of(const TauRep& t) {
    if (!t.valid()) throw DomainError("form_of: invalid TauRep");
    long long n = t.u * t.u + 4 * t.D - t.a * t.a;
    return QuadForm{t.b, t.u, n / (4 * t.b)};
}

QuadForm sl2_act(const QuadForm& f, const Mat2& m) {
    if (m.det() != 1) throw DomainError("sl2_act: determinant must be 1");
    // substitute (x, y) -> (p x + q y, r x + s y)
    long long a2 = f.a * m.p * m.p + f.b * m.p * m.r + f.c * m.r * m.r;
    long long b2 = 2 * f.a * m.p * m.q + f.b * (m.p * m.s + m.q * m.r) + 2 * f.c * m.r * m.s;
    long long c2 = f.a * m.q * m.q + f.b * m.q * m.s + f.c * m.s * m.s;
    return QuadForm{a2, b2, c2};
}

std::pair<QuadForm, Mat2> reduce_form(const QuadForm& f) {
    if (!f.positive_definite()) throw DomainError("reduce_form: form not positive definite");
    QuadForm g = f;
    Mat2 m; // accumulated transform, g = f acted by m
    for (int guard = 0; guard < 10000; ++guard) {
        // translate: b into (-a, a]
        if (g.b > g.a || g.b <= -g.a) {
            long long k = (g.a - g.b) / (2 * g.a); // seed; loops make it exact
            while (g.b + 2 * g.a * k > g.a) --k;
            while (g.b + 2 * g.a * k <= -g.a) ++k;
            Mat2 t{1, k, 0, 1};
            g = sl2_act(g, t);
            m = m * t;
        }
        if (g.a > g.c) {
            Mat2 s{0, -1, 1, 0};
            g = sl2_act(g, s);
            m = m * s;
            continue;
        }
        if (g.a == g.c && g.b < 0) {
            Mat2 s{0, -1, 1, 0};
            g = sl2_act(g, s);
            m = m * s;
        }
        if (g.is_reduced()) return {g, m};
    }
    throw DomainError("reduce_form: reduction did not terminate");
}

bool is_perfect_square(long long n) {
    if (n < 0) return false;
    long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(n))));
    for (long long d = std::max(0LL, r - 2); d <= r + 2; ++d)
        if (d * d == n) return true;
    return false;
}

namespace {
// largest f with f^2 | n (n > 0)
long long square_divisor_part(long long n) {
    long long f = 1;
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) f *= p;
    }
    return f;
}
} // namespace

OrderDesc endo_order(const TauRep& t) {
    if (!t.valid()) throw DomainError("endo_order: invalid TauRep");
    long long n = 4 * t.D - t.a * t.a; // > 0
    // field = Q(sqrt(a^2-4D)) = Q(sqrt(-n))
    long long f = square_divisor_part(n);
    long long m = n / (f * f); // squarefree part
    long long field_disc = (m % 4 == 3) ? -m : -4 * m;

    long long v;
    if (t.a % 2 == 0) {
        v = (n % 4 == 0) ? square_divisor_part(n / 4) : 1;
    } else {
        v = square_divisor_part(n);
        while (v % 2 == 0) v /= 2;
    }
    return OrderDesc{field_disc, v};
}

VariantPrediction predict_system(const TauRep& t) {
    QuadForm f = form_of(t);
    auto [red, m] = reduce_form(f);
    bool all_even = (red.a % 2 == 0) && (red.b % 2 == 0) && (red.c % 2 == 0);
    VariantPrediction out;
    if (t.D % 2 == 1) {
        bool all_odd = (red.a % 2 != 0) && (red.b % 2 != 0) && (red.c % 2 != 0);
        out.primary = all_even ? SystemVariant::S1
                               : (all_odd ? SystemVariant::S3 : SystemVariant::S2);
        out.secondary = out.primary;
    } else {
        if (all_even) {
            out.primary = out.secondary = SystemVariant::S4;
        } else {
            // the parity rule does not separate S5 from S6
            out.ambiguous = true;
            out.primary = SystemVariant::S5;
            out.secondary = SystemVariant::S6;
        }
    }
    return out;
}

bool OrbitRep::square_policy_exempt(long long D) const {
    if (!is_perfect_square(D)) return false;
    SystemVariant excluded = (D % 2 == 1) ? SystemVariant::S1 : SystemVariant::S4;
    for (const auto& v : alias_variants)
        if (v.ambiguous || v.primary != excluded) return false;
    return true;
}

std::vector<OrbitRep> enumerate_orbits(long long D, bool allow_square) {
    if (D < 2) throw DegreeTooSmall("enumerate: D must be >= 2");
    if (is_perfect_square(D) && !allow_square)
        throw SquareVariantForbidden(
            "enumerate: D is a perfect square; pass allow_square to proceed");

    struct Entry {
        QuadForm reduced;
        TauRep rep;
    };
    std::vector<OrbitRep> orbits;

    for (long long a = 0; a * a < 4 * D; ++a) {
        long long n = 4 * D - a * a;
        std::vector<Entry> seen; // distinct reduced forms for this trace
        long long bmax = 2 * (static_cast<long long>(std::sqrt(static_cast<double>(n) / 3.0)) + 1);
        for (long long b = 1; b <= bmax; ++b) {
            for (long long u = 0; u < 2 * b; ++u) {
                if ((u * u + n) % (4 * b) != 0) continue;
                TauRep t{D, a, u, b};
                QuadForm f = form_of(t);
                auto [red, mtx] = reduce_form(f);
                bool known = false;
                for (const auto& e : seen)
                    if (e.reduced == red) {
                        known = true;
                        break;
                    }
                if (known) continue;
                // canonical representation straight from the reduced form
                TauRep canon{D, a, red.b, red.a};
                seen.push_back(Entry{red, canon});
            }
        }
        std::sort(seen.begin(), seen.end(),
                  [](const Entry& x, const Entry& y) { return x.reduced < y.reduced; });
        for (const auto& e : seen) {
            // merge representations of the same period point: the reduced
            // forms then share a primitive part, so tau values coincide
            bool merged = false;
            for (auto& orb : orbits) {
                const QuadForm& g = orb.reduced;
                const QuadForm& h = e.reduced;
                // proportional coefficients <=> identical period point
                bool same_point = (g.a * h.b == h.a * g.b) && (g.a * h.c == h.a * g.c);
                if (same_point) {
                    orb.aliases.push_back(e.rep);
                    orb.alias_forms.push_back(e.reduced);
                    orb.alias_variants.push_back(predict_system(e.rep));
                    if (e.reduced.content() < orb.reduced.content()) {
                        orb.rep = e.rep;
                        orb.reduced = e.reduced;
                    }
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                OrbitRep orb;
                orb.rep = e.rep;
                orb.reduced = e.reduced;
                orb.aliases.push_back(e.rep);
                orb.alias_forms.push_back(e.reduced);
                orb.alias_variants.push_back(predict_system(e.rep));
                orbits.push_back(std::move(orb));
            }
        }
    }
    std::sort(orbits.begin(), orbits.end(), [](const OrbitRep& x, const OrbitRep& y) {
        if (x.rep.a != y.rep.a) return x.rep.a < y.rep.a;
        return x.reduced < y.reduced;
    });
    return orbits;
}

std::vector<TauRep> enumerate_reps(long long D, bool allow_square) {
    std::vector<TauRep> out;
    for (const auto& orb : enumerate_orbits(D, allow_square)) out.push_back(orb.rep);
    return out;
}

// ------------------------------------------------------------------ ExactTau

ExactTau ExactTau::from_quadratic(long long A, long long B, long long C) {
    if (A == 0) throw DomainError("ExactTau: A must be nonzero");
    if (A < 0) {
        A = -A;
        B = -B;
        C = -C;
    }
    long long g = std::gcd(std::gcd(std::llabs(A), std::llabs(B)), std::llabs(C));
    if (g > 1) {
        A /= g;
        B /= g;
        C /= g;
    }
    ExactTau t{A, B, C};
    if (t.disc() >= 0) throw DomainError("ExactTau: discriminant must be negative");
    return t;
}

ExactTau ExactTau::from_taurep(const TauRep& t) {
    if (!t.valid()) throw DomainError("ExactTau: invalid TauRep");
    // tau = (u + sqrt(4D-a^2) i)/(2b): 4 b^2 tau^2 - 4 b u tau + (u^2 + 4D - a^2) = 0
    return from_quadratic(4 * t.b * t.b, -4 * t.b * t.u, t.u * t.u + 4 * t.D - t.a * t.a);
}

ExactTau ExactTau::moebius(long long p, long long q, long long r, long long s) const {
    if (p * s - q * r <= 0) throw DomainError("ExactTau::moebius: determinant must be positive");
    // t = (s t' - q) / (-r t' + p)
    long long A2 = A * s * s - B * r * s + C * r * r;
    long long B2 = -2 * A * q * s + B * (p * s + q * r) - 2 * C * p * r;
    long long C2 = A * q * q - B * p * q + C * p * p;
    return from_quadratic(A2, B2, C2);
}

CBall ExactTau::value(mpfr_prec_t prec) const {
    // upper-half root: (-B + sqrt(4AC - B^2) i) / (2A)
    CBall root = CBall::sqrt_ui(static_cast<unsigned long>(4 * A * C - B * B), prec);
    CBall z = CBall::from_si(static_cast<long>(-B), prec) + root.mul_i();
    return z.div_si(static_cast<long>(2 * A));
}

std::string ExactTau::ring_label() const {
    long long d = disc(); // = cond^2 * dK
    long long n = -d;
    long long f = square_divisor_part(n);
    long long m = n / (f * f); // squarefree
    long long dK, cond;
    if (m % 4 == 3) {
        dK = -m;
        cond = f;
    } else {
        dK = -4 * m;
        cond = f / 2; // f is even here since d = 0 or 1 mod 4
    }
    auto cstr = [](long long c) { return c == 1 ? std::string() : std::to_string(c); };
    if (dK == -4) return "Z[" + (cond == 1 ? std::string("i") : std::to_string(cond) + "i") + "]";
    if (dK % 4 == 0) return "Z[" + cstr(cond) + "sqrt(" + std::to_string(dK / 4) + ")]";
    if (cond % 2 == 0) return "Z[" + cstr(cond / 2) + "sqrt(" + std::to_string(dK) + ")]";
    return "Z[" + cstr(cond) + "(1+sqrt(" + std::to_string(dK) + "))/2]";
}

} // namespace cmlj
