#include "cmlj/modular.hpp"

#include <algorithm>
#include <cmath>

#include "cmlj/errors.hpp"

namespace cmlj {

namespace {

bool im_positive_certified(const CBall& tau) {
    mpfr_t lb;
    mpfr_init2(lb, UReal::kPrec);
    mpfr_set(lb, tau.im_mid(), MPFR_RNDD);
    mpfr_sub(lb, lb, tau.radius().raw(), MPFR_RNDD);
    bool ok = mpfr_sgn(lb) > 0;
    mpfr_clear(lb);
    return ok;
}

} // namespace

CBall j_of_lambda(const CBall& lambda) {
    mpfr_prec_t p = lambda.precision();
    CBall t = lambda.sqr() - lambda; // lambda(lambda-1); zero iff lambda in {0,1}
    if (!t.is_nonzero()) throw LambdaDegenerate("j_of_lambda: lambda in {0,1}");
    CBall one = CBall::from_si(1, p);
    return (t + one).pow_ui(3).mul_si(256) / t.sqr();
}

CBall j_from_quadratic(const CBall& mu, QuadShape shape) {
    mpfr_prec_t p = mu.precision();
    CBall one = CBall::from_si(1, p);
    if (shape == QuadShape::PlusMuPlusOne) {
        CBall den = mu + CBall::from_si(2, p);
        if (!den.is_nonzero()) throw DenominatorZero("j_from_quadratic: mu + 2 contains 0");
        return (mu + one).pow_ui(3).mul_si(256) / den;
    }
    if (!mu.is_nonzero()) throw DenominatorZero("j_from_quadratic: mu contains 0");
    return (mu - one).pow_ui(3).mul_si(256) / mu;
}

CBall j_q_expansion(const CBall& tau, int n_terms, bool even_only) {
    if (n_terms < 1 || n_terms > 6)
        throw DomainError("j_q_expansion: n_terms must be in 1..6");
    if (!im_positive_certified(tau))
        throw NotInUpperHalfPlane("j_q_expansion: Im(tau) must be positive");
    mpfr_prec_t p = std::max<mpfr_prec_t>(tau.precision(), 128);
    CBall q = (CBall::pi(p).mul_si(2).mul_i() * tau.at_precision(p)).exp();
    const auto& coeffs = j_expansion_coeffs();
    CBall sum(p);
    for (int t = 0; t < n_terms; ++t) {
        int power = t - 1;
        if (even_only && power % 2 != 0) continue;
        CBall term = (power >= 0) ? q.pow_ui(static_cast<unsigned long>(power))
                                  : q.inv();
        CBall cb = CBall::from_si(static_cast<long>(coeffs[t]), p);
        sum = sum + cb * term;
    }
    // heuristic truncation term, deliberately non-rigorous
    UReal tail = q.abs_ub();
    mpfr_pow_ui(tail.raw(), tail.raw(), static_cast<unsigned long>(n_terms), MPFR_RNDU);
    mpfr_mul_d(tail.raw(), tail.raw(), 1e11, MPFR_RNDU);
    sum.add_error(tail);
    return sum;
}

ThetaJ j_theta_oracle(const CBall& tau, mpfr_prec_t precision) {
    if (!im_positive_certified(tau))
        throw NotInUpperHalfPlane("j_theta_oracle: Im(tau) must be positive");
    mpfr_prec_t wp = precision + 64;
    CBall t = tau.at_precision(wp);
    CBall ipi_tau = CBall::pi(wp).mul_i() * t;
    CBall qt = ipi_tau.exp(); // nome, |qt| < 1
    UReal qa = qt.abs_ub();
    if (!(qa < UReal::from_double(0.999)))
        throw NotInUpperHalfPlane("j_theta_oracle: nome too close to 1 at this precision");

    double lq = std::log2(std::max(1e-300, qa.to_double()));
    if (lq >= 0) lq = -1e-3;
    long need = static_cast<long>(std::ceil(static_cast<double>(wp + 24) / (-lq)));
    long N = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(need)))) + 2;

    CBall one = CBall::from_si(1, wp);
    CBall qt2 = qt.sqr();
    // S2 = sum_{n>=0} qt^{n(n+1)}; increment factor qt^{2(n+1)}
    CBall s2(wp), pw = one, step = qt2;
    for (long n = 0;; ++n) {
        s2 = s2 + pw;
        if (n >= N) break;
        pw = pw * step;   // qt^{(n+1)(n+2)} = qt^{n(n+1)} * qt^{2(n+1)}
        step = step * qt2;
    }
    // S3 = 1 + 2 sum_{n>=1} qt^{n^2}; increment factor qt^{2n+1}
    CBall s3 = one;
    CBall pw3 = qt, step3 = qt * qt2;
    for (long n = 1;; ++n) {
        s3 = s3 + pw3.mul_si(2);
        if (n >= N) break;
        pw3 = pw3 * step3; // qt^{(n+1)^2} = qt^{n^2} * qt^{2n+1}
        step3 = step3 * qt2;
    }
    // geometric tails
    UReal denom_gap;
    {
        mpfr_t g;
        mpfr_init2(g, UReal::kPrec);
        mpfr_ui_sub(g, 1, qa.raw(), MPFR_RNDD);
        mpfr_ui_div(denom_gap.raw(), 1, g, MPFR_RNDU);
        mpfr_clear(g);
    }
    auto tail_pow = [&](long e) {
        UReal u = qa;
        mpfr_pow_ui(u.raw(), u.raw(), static_cast<unsigned long>(e), MPFR_RNDU);
        return u * denom_gap;
    };
    {
        UReal t2 = tail_pow((N + 1) * (N + 2));
        s2.add_error(t2);
        UReal t3 = tail_pow((N + 1) * (N + 1));
        mpfr_mul_ui(t3.raw(), t3.raw(), 2, MPFR_RNDU);
        s3.add_error(t3);
    }
    // theta2 = 2 qt^{1/4} S2, theta3 = S3; lambda = theta2^4 / theta3^4
    CBall q_quarter = (ipi_tau.div_si(4)).exp();
    CBall th2 = q_quarter * s2.mul_si(2);
    CBall th3 = s3;
    ThetaJ out;
    out.lambda_tau = (th2 / th3).pow_ui(4);
    out.j_tau = j_of_lambda(out.lambda_tau);
    return out;
}

// --------------------------------------------------------------- recognition

namespace {

// LLL reduction over integer rows (few rows, small dimension)
void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
    size_t n = b.size();
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n, 0));
    std::vector<mpq_class> B(n, 0);
    auto gram = [&]() {
        std::vector<std::vector<mpq_class>> star(n);
        for (size_t i = 0; i < n; ++i) {
            std::vector<mpq_class> v(b[i].size());
            for (size_t k = 0; k < b[i].size(); ++k) v[k] = mpq_class(b[i][k]);
            for (size_t j = 0; j < i; ++j) {
                if (B[j] == 0) {
                    mu[i][j] = 0;
                    continue;
                }
                mpq_class num = 0;
                for (size_t k = 0; k < v.size(); ++k)
                    num += mpq_class(b[i][k]) * star[j][k];
                mu[i][j] = num / B[j];
                for (size_t k = 0; k < v.size(); ++k) v[k] -= mu[i][j] * star[j][k];
            }
            star[i] = v;
            mpq_class nb = 0;
            for (auto& x : v) nb += x * x;
            B[i] = nb;
        }
    };
    gram();
    size_t k = 1;
    int guard = 0;
    const mpq_class delta(99, 100);
    while (k < n && ++guard < 10000) {
        for (size_t j = k; j-- > 0;) {
            mpq_class m = mu[k][j];
            mpz_class r;
            // nearest integer
            mpz_class num = m.get_num(), den = m.get_den();
            mpz_class top = 2 * num + den;
            mpz_class bot = 2 * den;
            mpz_fdiv_q(r.get_mpz_t(), top.get_mpz_t(), bot.get_mpz_t());
            if (r != 0)
                for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= r * b[j][c];
        }
        gram();
        mpq_class lhs = B[k];
        mpq_class rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
        if (lhs < rhs) {
            std::swap(b[k], b[k - 1]);
            gram();
            k = (k > 1) ? k - 1 : 1;
        } else {
            ++k;
        }
    }
}

void round_to_mpz(mpz_class& out, mpfr_srcptr x) {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(x));
    mpfr_round(t, x);
    mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
}

struct Relation {
    std::vector<mpz_class> coeffs; // low degree first
    mpz_class height;
    int degree;
};

std::vector<Relation> lattice_relations(const std::vector<CBall>& powers, long cbits) {
    // rows: [e_i | C*Re(x_i), C*Im(x_i)]
    size_t n = powers.size();
    mpfr_prec_t p = powers[0].precision();
    std::vector<std::vector<mpz_class>> rows(n, std::vector<mpz_class>(n + 2, 0));
    mpfr_t scaled;
    mpfr_init2(scaled, p);
    for (size_t i = 0; i < n; ++i) {
        rows[i][i] = 1;
        mpfr_mul_2si(scaled, powers[i].re_mid(), cbits, MPFR_RNDN);
        round_to_mpz(rows[i][n], scaled);
        mpfr_mul_2si(scaled, powers[i].im_mid(), cbits, MPFR_RNDN);
        round_to_mpz(rows[i][n + 1], scaled);
    }
    mpfr_clear(scaled);
    lll_reduce(rows);
    std::vector<Relation> rels;
    for (auto& r : rows) {
        Relation rel;
        rel.coeffs.assign(r.begin(), r.begin() + n);
        bool allzero = true;
        rel.height = 0;
        for (auto& c : rel.coeffs) {
            if (c != 0) allzero = false;
            mpz_class a = abs(c);
            if (a > rel.height) rel.height = a;
        }
        if (allzero) continue;
        int deg = 0;
        for (size_t i = 0; i < n; ++i)
            if (rel.coeffs[i] != 0) deg = static_cast<int>(i);
        rel.degree = deg;
        rels.push_back(std::move(rel));
    }
    std::sort(rels.begin(), rels.end(), [](const Relation& a, const Relation& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.height < b.height;
    });
    return rels;
}

CBall ball_from_mpz(const mpz_class& z, mpfr_prec_t prec) {
    mpfr_t t, zero;
    mpfr_init2(t, prec);
    mpfr_init2(zero, prec);
    mpfr_set_zero(zero, 1);
    int in = mpfr_set_z(t, z.get_mpz_t(), MPFR_RNDN);
    CBall r = CBall::from_mid(t, zero, prec);
    if (in != 0 && !mpfr_zero_p(t))
        r.add_error_pow2(mpfr_get_exp(t) - static_cast<long>(prec) + 1);
    mpfr_clear(zero);
    mpfr_clear(t);
    return r;
}

bool certify_relation(const Relation& rel, const CBall& value, mpfr_prec_t prec) {
    CBall acc(prec);
    CBall pw = CBall::from_si(1, prec);
    for (const auto& c : rel.coeffs) {
        acc = acc + ball_from_mpz(c, prec) * pw;
        pw = pw * value;
    }
    return acc.contains_zero();
}

bool mpz_perfect_square(const mpz_class& z) {
    if (z < 0) return false;
    return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

} // namespace

UniPoly AlgebraicCandidate::poly_ball(mpfr_prec_t prec) const {
    UniPoly p;
    for (const auto& s : min_poly) {
        mpz_class z(s);
        p.coeffs.push_back(ball_from_mpz(z, prec));
    }
    return p;
}

std::string AlgebraicCandidate::pretty() const {
    std::string s;
    for (size_t i = min_poly.size(); i-- > 0;) {
        if (!s.empty()) s += " + ";
        s += min_poly[i] + (i > 0 ? "*x^" + std::to_string(i) : "");
    }
    return s + " = 0";
}

std::optional<AlgebraicCandidate> recognize_quadratic(const CBall& value,
                                                      const mpz_class& height_bound) {
    mpfr_prec_t prec = value.precision();
    // radius * height_bound^2 < 1/4
    UReal hb2;
    {
        mpz_class h2 = height_bound * height_bound;
        mpfr_set_z(hb2.raw(), h2.get_mpz_t(), MPFR_RNDU);
    }
    UReal lim = value.radius() * hb2;
    if (!(lim < UReal::from_double(0.25)))
        throw InsufficientPrecision("recognize_quadratic: radius too large for height bound");

    long cbits = std::max<long>(64, 2 * static_cast<long>(prec) / 3);
    CBall one = CBall::from_si(1, prec);
    for (int deg = 1; deg <= 2; ++deg) {
        std::vector<CBall> powers = {one, value};
        if (deg == 2) powers.push_back(value.sqr());
        for (const auto& rel : lattice_relations(powers, cbits)) {
            if (rel.height > height_bound) continue;
            if (rel.degree < 1) continue;
            if (!certify_relation(rel, value, prec)) continue;
            AlgebraicCandidate cand;
            cand.degree = rel.degree;
            std::vector<mpz_class> cs(rel.coeffs.begin(),
                                      rel.coeffs.begin() + rel.degree + 1);
            // content 1, positive leading coefficient
            mpz_class g = 0;
            for (auto& c : cs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g != 0)
                for (auto& c : cs) c /= g;
            if (cs.back() < 0)
                for (auto& c : cs) c = -c;
            if (cand.degree == 2) {
                mpz_class disc = cs[1] * cs[1] - 4 * cs[2] * cs[0];
                if (mpz_perfect_square(disc)) continue; // reducible: degree 1 handles it
                // conjugate root: -a1/a2 - value
                CBall sum_roots = -(ball_from_mpz(cs[1], prec) / ball_from_mpz(cs[2], prec));
                cand.conjugate_approx = sum_roots - value;
            }
            for (auto& c : cs) cand.min_poly.push_back(c.get_str());
            cand.approx = value;
            return cand;
        }
    }
    return std::nullopt;
}

std::optional<AlgebraicCandidate> recognize_quadratic(const CBall& value,
                                                      long long height_bound) {
    return recognize_quadratic(value, mpz_class(std::to_string(height_bound)));
}

HilbertGenerator hilbert_generator(const TauRep& t, mpfr_prec_t precision) {
    OrderDesc od = endo_order(t);
    ThetaJ th = j_theta_oracle(t.tau(precision + 64), precision);
    auto cand = recognize_quadratic(th.j_tau.at_precision(precision));
    if (!cand)
        throw InsufficientPrecision("hilbert_generator: j value not recognized");
    long long m = (od.field_disc % 4 == 0) ? od.field_disc / 4 : od.field_disc;
    HilbertGenerator out;
    out.j_value = *cand;
    out.field_label = "Q(sqrt(" + std::to_string(m) + "))";
    out.order = od;
    return out;
}

// --------------------------------------------------------------------- match

namespace {

// equality classes among candidate j values
std::vector<int> j_classes(const std::vector<CBall>& js) {
    std::vector<int> cls(js.size(), -1);
    int next = 0;
    for (size_t i = 0; i < js.size(); ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = next;
        for (size_t j = i + 1; j < js.size(); ++j)
            if (cls[j] < 0 && !js[i].certifiably_distinct(js[j])) cls[j] = cls[i];
        ++next;
    }
    return cls;
}

} // namespace

std::vector<int> match(const std::vector<CBall>& j_values,
                       const std::vector<ExactTau>& taus, int n_terms,
                       mpfr_prec_t oracle_precision) {
    if (j_values.empty() || taus.empty())
        throw DomainError("match: empty inputs");
    std::vector<int> cls = j_classes(j_values);
    std::vector<int> out(taus.size(), -1);
    for (size_t ti = 0; ti < taus.size(); ++ti) {
        CBall tau = taus[ti].value(oracle_precision);
        CBall series = j_q_expansion(tau, n_terms);
        // closest by midpoint distance with certified margin against other classes
        auto pick = [&](const CBall& probe) -> int {
            int best = -1;
            UReal bestd;
            for (size_t i = 0; i < j_values.size(); ++i) {
                UReal d = probe.mid_dist_ub(j_values[i]);
                if (best < 0 || d < bestd) {
                    best = static_cast<int>(i);
                    bestd = d;
                }
            }
            // margin: nearest must beat every other class even after radii
            UReal r_all = probe.radius() + probe.radius() + j_values[best].radius();
            for (size_t i = 0; i < j_values.size(); ++i) {
                if (cls[i] == cls[best]) continue;
                UReal di = probe.mid_dist_lb(j_values[i]);
                UReal lhs = bestd + r_all + j_values[i].radius();
                if (!(lhs < di)) return -1; // ambiguous
            }
            return best;
        };
        int got = pick(series);
        if (got < 0) {
            // oracle tiebreak at increasing precision
            for (mpfr_prec_t op = oracle_precision; op <= 4 * oracle_precision && got < 0;
                 op *= 2) {
                ThetaJ th = j_theta_oracle(taus[ti].value(op + 64), op);
                got = pick(th.j_tau);
            }
        }
        if (got < 0)
            throw AmbiguousMatch("match: candidates inseparable for tau index " +
                                 std::to_string(ti));
        out[ti] = got;
    }
    return out;
}

} // namespace cmlj
