#include "cmlj/ramsys.hpp"

#include <algorithm>
#include <cassert>

#include "cmlj/errors.hpp"

namespace cmlj {

namespace {

// x, x-1, x-lambda as PolyInX over the system unknowns
PolyInX lin_x(int nv) { return PolyInX::x_poly(nv); }
PolyInX lin_x_minus_1(int nv) {
    return PolyInX::linear_minus(nv, MultiPoly::constant_si(nv, 1));
}
PolyInX lin_x_minus_lambda(int nv) {
    return PolyInX::linear_minus(nv, MultiPoly::var(nv, 1));
}

PolyInX block_poly(const Block& blk, int nv) {
    // returns the squared product
    PolyInX prod = PolyInX::constant(nv, MultiPoly::constant_si(nv, 1));
    if (blk.size == 0) return prod;
    if (!blk.coeff_form) {
        for (int i = 0; i < blk.size; ++i) {
            PolyInX f = PolyInX::linear_minus(nv, MultiPoly::var(nv, blk.first_unknown + i));
            prod = prod * f * f;
        }
        return prod;
    }
    // monic polynomial of degree size with unknown coefficients, then squared
    PolyInX m(nv);
    m.c.assign(blk.size + 1, MultiPoly(nv));
    m.c[blk.size] = MultiPoly::constant_si(nv, 1);
    for (int i = 0; i < blk.size; ++i)
        m.c[blk.size - 1 - i] = MultiPoly::var(nv, blk.first_unknown + i);
    return m * m;
}

void append_coefficient_equations(const PolyInX& lhs, const PolyInX& rhs, int expected_degree,
                                  std::vector<MultiPoly>& out) {
    PolyInX diff = lhs - rhs;
    // the x^expected_degree coefficient must cancel identically
    if (static_cast<int>(diff.c.size()) > expected_degree &&
        !diff.c[expected_degree].is_zero())
        throw DomainError("system construction: leading coefficients failed to cancel");
    for (int k = expected_degree - 1; k >= 0; --k) {
        MultiPoly eq =
            (k < static_cast<int>(diff.c.size())) ? diff.c[k] : MultiPoly(diff.nvars);
        out.push_back(std::move(eq));
    }
}

void finish_system(PolySystem& sys) {
    sys.jacobian.resize(sys.equations.size());
    for (size_t i = 0; i < sys.equations.size(); ++i) {
        sys.jacobian[i].reserve(sys.unknowns.size());
        for (size_t v = 0; v < sys.unknowns.size(); ++v)
            sys.jacobian[i].push_back(sys.equations[i].derivative(static_cast<int>(v)));
    }
}

std::vector<std::string> root_labels(const std::string& base, int n) {
    std::vector<std::string> out;
    if (n == 1) {
        out.push_back(base);
        return out;
    }
    for (int i = 1; i <= n; ++i) out.push_back(base + std::to_string(i));
    return out;
}

} // namespace

std::string PolySystem::name() const {
    if (is_d2()) {
        static const char* qs[] = {"x", "x-1", "x-lambda"};
        static const char* sp[] = {"P", "P-Q", "P-lambdaQ"};
        return std::string("D2[Q=") + qs[d2_q] + ",split=" + sp[d2_split] + "]";
    }
    return "D" + std::to_string(D) + "/" + variant_name(variant);
}

PolySystem build_system(long long D, SystemVariant variant) {
    if (D < 3) throw DomainError("build_system: D must be >= 3 (use build_d2_cases for D=2)");
    bool odd = (D % 2 != 0);
    if (odd && !variant_is_odd_family(variant))
        throw VariantParityMismatch("build_system: even-D variant requested for odd D");
    if (!odd && variant_is_odd_family(variant))
        throw VariantParityMismatch("build_system: odd-D variant requested for even D");
    if (is_perfect_square(D) &&
        (variant == SystemVariant::S1 || variant == SystemVariant::S4))
        throw SquareVariantForbidden(
            "build_system: multiplication-type system excluded for perfect-square D");
    if (D > 7) throw DomainError("build_system: systems beyond D=7 are out of scope");

    PolySystem sys;
    sys.D = D;
    sys.variant = variant;

    int sa, sb, sg, sd;
    if (odd) {
        sa = sb = sg = sd = static_cast<int>((D - 1) / 2);
    } else if (variant == SystemVariant::S4) {
        sa = sg = sd = static_cast<int>(D / 2);
        sb = static_cast<int>(D / 2 - 2);
        if (sb < 0)
            throw VariantParityMismatch("build_system: S4 needs D >= 4");
    } else {
        sa = sb = static_cast<int>(D / 2 - 1);
        sg = sd = static_cast<int>(D / 2);
    }

    sys.unknowns = {"k", "lambda"};
    auto add_block = [&](char role, int size, bool coeff_form,
                         const std::vector<std::string>& labels) {
        Block b;
        b.role = role;
        b.size = size;
        b.coeff_form = coeff_form;
        b.first_unknown = static_cast<int>(sys.unknowns.size());
        for (const auto& l : labels) sys.unknowns.push_back(l);
        sys.blocks.push_back(b);
    };

    if (odd) {
        add_block('A', sa, false, root_labels("alpha", sa));
        add_block('B', sb, false, root_labels("beta", sb));
        add_block('G', sg, false, root_labels("gamma", sg));
        add_block('D', sd, false, root_labels("delta", sd));
    } else {
        add_block('A', sa, false, root_labels("alpha", sa));
        add_block('B', sb, false, root_labels("beta", sb));
        if (sg == 2) {
            add_block('G', sg, true, {"u", "v"});
            add_block('D', sd, true, {"u'", "v'"});
        } else {
            add_block('G', sg, true, root_labels("u", sg));
            add_block('D', sd, true, root_labels("w", sd));
        }
    }
    int nv = static_cast<int>(sys.unknowns.size());
    assert(nv == 2 * D);

    MultiPoly k = MultiPoly::var(nv, 0);
    MultiPoly lam = MultiPoly::var(nv, 1);
    PolyInX A = block_poly(sys.blocks[0], nv);
    PolyInX B = block_poly(sys.blocks[1], nv);
    PolyInX G = block_poly(sys.blocks[2], nv);
    PolyInX Dd = block_poly(sys.blocks[3], nv);
    PolyInX x = lin_x(nv), xm1 = lin_x_minus_1(nv), xml = lin_x_minus_lambda(nv);

    PolyInX L1(nv), R1(nv), L2(nv), R2(nv);
    switch (variant) {
        case SystemVariant::S1:
            L1 = (x * A).scale_poly(k) - B;
            R1 = (xm1 * G).scale_poly(k);
            L2 = (x * A).scale_poly(k) - B.scale_poly(lam);
            R2 = (xml * Dd).scale_poly(k);
            break;
        case SystemVariant::S2:
            L1 = (x * A).scale_poly(k) - B;
            R1 = (xml * G).scale_poly(k);
            L2 = (x * A).scale_poly(k) - B.scale_poly(lam);
            R2 = (xm1 * Dd).scale_poly(k);
            break;
        case SystemVariant::S3:
            L1 = (xml * A).scale_poly(k) - B;
            R1 = (x * G).scale_poly(k);
            L2 = (xml * A).scale_poly(k) - B.scale_poly(lam);
            R2 = (xm1 * Dd).scale_poly(k);
            break;
        case SystemVariant::S4:
            L1 = A.scale_poly(k) - x * xm1 * xml * B;
            R1 = G.scale_poly(k);
            L2 = A.scale_poly(k) - (x * xm1 * xml * B).scale_poly(lam);
            R2 = Dd.scale_poly(k);
            break;
        case SystemVariant::S5:
            L1 = (xm1 * xml * A).scale_poly(k) - x * B;
            R1 = G.scale_poly(k);
            L2 = (xm1 * xml * A).scale_poly(k) - (x * B).scale_poly(lam);
            R2 = Dd.scale_poly(k);
            break;
        case SystemVariant::S6:
            L1 = (x * xm1 * A).scale_poly(k) - xml * B;
            R1 = G.scale_poly(k);
            L2 = (x * xm1 * A).scale_poly(k) - (xml * B).scale_poly(lam);
            R2 = Dd.scale_poly(k);
            break;
    }
    append_coefficient_equations(L1, R1, static_cast<int>(D), sys.equations);
    append_coefficient_equations(L2, R2, static_cast<int>(D), sys.equations);
    assert(static_cast<long long>(sys.equations.size()) == 2 * D);
    finish_system(sys);
    return sys;
}

std::vector<D2Case> build_d2_cases() {
    std::vector<D2Case> cases;
    static const char* labels[] = {"x", "x-1", "x-lambda"};
    for (int qcase = 0; qcase < 3; ++qcase) {
        D2Case c;
        c.q_label = labels[qcase];
        for (int split = 0; split < 3; ++split) {
            PolySystem sys;
            sys.D = 2;
            sys.d2_q = qcase;
            sys.d2_split = split;
            sys.unknowns = {"k", "lambda", "s1", "s2"};
            int nv = 4;
            MultiPoly k = MultiPoly::var(nv, 0);
            MultiPoly lam = MultiPoly::var(nv, 1);
            PolyInX x = lin_x(nv), xm1 = lin_x_minus_1(nv), xml = lin_x_minus_lambda(nv);
            PolyInX lins[3] = {x, xm1, xml};
            PolyInX Q = lins[qcase];
            PolyInX M = lins[(qcase + 1) % 3] * lins[(qcase + 2) % 3]; // other two factors
            // squares (x - s1)^2 and (x - s2)^2
            PolyInX sq1 = PolyInX::linear_minus(nv, MultiPoly::var(nv, 2));
            sq1 = sq1 * sq1;
            PolyInX sq2 = PolyInX::linear_minus(nv, MultiPoly::var(nv, 3));
            sq2 = sq2 * sq2;

            PolyInX kM = M.scale_poly(k);
            PolyInX P(nv), lhs1(nv), lhs2(nv);
            switch (split) {
                case 0: // P = k m1 m2; P - Q and P - lambda Q are squares
                    P = kM;
                    lhs1 = P - Q;
                    lhs2 = P - Q.scale_poly(lam);
                    break;
                case 1: // P - Q = k m1 m2; P and P - lambda Q are squares
                    P = kM + Q;
                    lhs1 = P;
                    lhs2 = P - Q.scale_poly(lam);
                    break;
                case 2: // P - lambda Q = k m1 m2; P and P - Q are squares
                    P = kM + Q.scale_poly(lam);
                    lhs1 = P;
                    lhs2 = P - Q;
                    break;
            }
            append_coefficient_equations(lhs1, sq1.scale_poly(k), 2, sys.equations);
            append_coefficient_equations(lhs2, sq2.scale_poly(k), 2, sys.equations);
            // block metadata: two singleton root blocks for the critical points
            Block b1{'G', 1, false, 2}, b2{'D', 1, false, 3};
            sys.blocks = {b1, b2};
            finish_system(sys);
            c.subsystems.push_back(std::move(sys));
        }
        cases.push_back(std::move(c));
    }
    return cases;
}

std::vector<CBall> residual(const PolySystem& sys, const Assignment& point) {
    if (point.size() != sys.unknowns.size())
        throw DomainError("residual: assignment size mismatch");
    std::vector<CBall> out;
    out.reserve(sys.equations.size());
    for (const auto& eq : sys.equations) out.push_back(eq.eval_ball(point));
    return out;
}

CBall HFunction::eval(const CBall& x) const { return poly_eval(num, x) / poly_eval(den, x); }

namespace {

UniPoly unipoly_from_polyinx(const PolyInX& p, const Assignment& point, mpfr_prec_t prec) {
    UniPoly out;
    out.coeffs.reserve(p.c.size());
    for (const auto& coeff : p.c) {
        std::vector<CBall> pt;
        pt.reserve(point.size());
        for (const auto& b : point) pt.push_back(b.at_precision(prec));
        out.coeffs.push_back(coeff.eval_ball(pt));
    }
    while (out.coeffs.size() > 1 && out.coeffs.back().radius().is_zero() &&
           mpfr_zero_p(out.coeffs.back().re_mid()) && mpfr_zero_p(out.coeffs.back().im_mid()))
        out.coeffs.pop_back();
    return out;
}

// numerator and denominator shapes per variant, as PolyInX over the unknowns
void h_shape(const PolySystem& sys, PolyInX& num, PolyInX& den) {
    int nv = static_cast<int>(sys.unknowns.size());
    MultiPoly k = MultiPoly::var(nv, 0);
    MultiPoly lam = MultiPoly::var(nv, 1);
    PolyInX x = lin_x(nv), xm1 = lin_x_minus_1(nv), xml = lin_x_minus_lambda(nv);
    if (sys.is_d2()) {
        PolyInX lins[3] = {x, xm1, xml};
        PolyInX Q = lins[sys.d2_q];
        PolyInX M = lins[(sys.d2_q + 1) % 3] * lins[(sys.d2_q + 2) % 3];
        PolyInX kM = M.scale_poly(k);
        switch (sys.d2_split) {
            case 0: num = kM; break;
            case 1: num = kM + Q; break;
            case 2: num = kM + Q.scale_poly(lam); break;
        }
        den = Q;
        return;
    }
    PolyInX A = block_poly(sys.blocks[0], nv);
    PolyInX B = block_poly(sys.blocks[1], nv);
    switch (sys.variant) {
        case SystemVariant::S1:
        case SystemVariant::S2:
            num = (x * A).scale_poly(k);
            den = B;
            break;
        case SystemVariant::S3:
            num = (xml * A).scale_poly(k);
            den = B;
            break;
        case SystemVariant::S4:
            num = A.scale_poly(k);
            den = x * xm1 * xml * B;
            break;
        case SystemVariant::S5:
            num = (xm1 * xml * A).scale_poly(k);
            den = x * B;
            break;
        case SystemVariant::S6:
            num = (x * xm1 * A).scale_poly(k);
            den = xml * B;
            break;
    }
}

} // namespace

std::vector<CBall> block_root_values(const PolySystem& sys, const Assignment& point,
                                     mpfr_prec_t prec) {
    std::vector<CBall> roots;
    for (const auto& blk : sys.blocks) {
        if (!blk.coeff_form) {
            for (int i = 0; i < blk.size; ++i)
                roots.push_back(point[blk.first_unknown + i].at_precision(prec));
        } else if (blk.size > 0) {
            UniPoly m;
            m.coeffs.assign(blk.size + 1, CBall(prec));
            m.coeffs[blk.size] = CBall::from_si(1, prec);
            for (int i = 0; i < blk.size; ++i)
                m.coeffs[blk.size - 1 - i] = point[blk.first_unknown + i].at_precision(prec);
            for (auto& r : poly_roots(m, prec)) roots.push_back(std::move(r));
        }
    }
    return roots;
}

HFunction assemble_h(const PolySystem& sys, const Assignment& point) {
    if (point.size() != sys.unknowns.size())
        throw DomainError("assemble_h: assignment size mismatch");
    mpfr_prec_t prec = 256;
    for (const auto& b : point) prec = std::max(prec, b.precision());

    const CBall& k = point[0];
    const CBall& lam = point[1];
    if (!k.is_nonzero()) throw DegenerateSolution("assemble_h: k not certifiably nonzero");
    if (!lam.is_nonzero() || !lam.certifiably_distinct(CBall::from_si(1, prec)))
        throw DegenerateSolution("assemble_h: lambda touches {0,1}");

    std::vector<CBall> crit = block_root_values(sys, point, prec);
    for (size_t i = 0; i < crit.size(); ++i) {
        if (!crit[i].is_nonzero() ||
            !crit[i].certifiably_distinct(CBall::from_si(1, prec)))
            throw DegenerateSolution("assemble_h: critical point touches {0,1}");
        for (size_t j = i + 1; j < crit.size(); ++j)
            if (!crit[i].certifiably_distinct(crit[j]))
                throw DegenerateSolution("assemble_h: coincident critical points");
    }

    PolyInX numx(0), denx(0);
    h_shape(sys, numx, denx);
    HFunction h;
    h.num = unipoly_from_polyinx(numx, point, prec);
    h.den = unipoly_from_polyinx(denx, point, prec);
    h.lambda = lam.at_precision(prec);
    if (h.num.degree() != static_cast<int>(sys.D) || h.den.degree() >= h.num.degree())
        throw DegenerateSolution("assemble_h: degenerate numerator/denominator degrees");
    return h;
}

namespace {

// add the roots of p (clustered) into a pooled list with multiplicity weights
void accumulate_roots(const UniPoly& p, int weight, mpfr_prec_t prec,
                      std::vector<std::pair<CBall, int>>& pool) {
    if (p.degree() < 1) return;
    auto clusters = poly_roots_clustered(p, prec, -static_cast<long>(prec) / 3);
    for (auto& cl : clusters) pool.emplace_back(cl.center, weight * cl.multiplicity);
}

// merge pooled points into clusters and return net multiplicities
std::vector<std::pair<CBall, int>> merge_pool(std::vector<std::pair<CBall, int>> pool,
                                              mpfr_prec_t prec) {
    UReal tol = UReal::pow2(-static_cast<long>(prec) / 4);
    std::vector<std::pair<CBall, int>> merged;
    for (auto& [pt, mult] : pool) {
        bool found = false;
        for (auto& [mp, mm] : merged) {
            if (mp.mid_dist_ub(pt) <= tol) {
                mm += mult;
                found = true;
                break;
            }
        }
        if (!found) merged.emplace_back(pt, mult);
    }
    return merged;
}

} // namespace

bool verify_square_condition(const HFunction& h) {
    mpfr_prec_t prec = std::max<mpfr_prec_t>(h.num.precision(), 256);
    const CBall one = CBall::from_si(1, prec);
    UniPoly n1 = h.num;                                  // h
    UniPoly n2 = h.num - h.den;                          // h - 1
    UniPoly n3 = h.num - h.den.scale(h.lambda);          // h - lambda
    // denominator: den^3 * x (x-1) (x-lambda)
    UniPoly sx = UniPoly::linear(CBall(prec));           // x
    UniPoly sx1 = UniPoly::linear(one);
    UniPoly sxl = UniPoly::linear(h.lambda);

    std::vector<std::pair<CBall, int>> pool;
    accumulate_roots(n1, +1, prec, pool);
    accumulate_roots(n2, +1, prec, pool);
    accumulate_roots(n3, +1, prec, pool);
    accumulate_roots(h.den, -3, prec, pool);
    accumulate_roots(sx, -1, prec, pool);
    accumulate_roots(sx1, -1, prec, pool);
    accumulate_roots(sxl, -1, prec, pool);
    for (auto& [pt, mult] : merge_pool(std::move(pool), prec))
        if (mult % 2 != 0) return false;
    // order at infinity
    long deg_num = n1.degree() + n2.degree() + n3.degree();
    long deg_den = 3 * h.den.degree() + 3;
    return (deg_num - deg_den) % 2 == 0;
}

Census ramification_census(const HFunction& h) {
    mpfr_prec_t prec = std::max<mpfr_prec_t>(h.num.precision(), 256);
    Census c;
    auto fiber = [&](const UniPoly& p) {
        CensusFiber f;
        if (p.degree() >= 1)
            for (auto& cl : poly_roots_clustered(p, prec, -static_cast<long>(prec) / 3))
                f.multiplicities.push_back(cl.multiplicity);
        std::sort(f.multiplicities.begin(), f.multiplicities.end());
        return f;
    };
    c.over_zero = fiber(h.num);
    c.over_one = fiber(h.num - h.den);
    c.over_lambda = fiber(h.num - h.den.scale(h.lambda));
    CensusFiber inf = fiber(h.den);
    int at_inf = h.num.degree() - h.den.degree();
    if (at_inf > 0) inf.multiplicities.push_back(at_inf);
    std::sort(inf.multiplicities.begin(), inf.multiplicities.end());
    c.over_infinity = inf;
    return c;
}

bool census_matches(const Census& c, long long D) {
    auto is_pattern = [](const CensusFiber& f, int simples, int doubles) {
        int s = 0, d = 0;
        for (int m : f.multiplicities) {
            if (m == 1)
                ++s;
            else if (m == 2)
                ++d;
            else
                return false;
        }
        return s == simples && d == doubles;
    };
    const CensusFiber* fibers[4] = {&c.over_zero, &c.over_one, &c.over_lambda,
                                    &c.over_infinity};
    if (D % 2 == 1) {
        int d2 = static_cast<int>((D - 1) / 2);
        for (auto* f : fibers)
            if (!is_pattern(*f, 1, d2)) return false;
        return true;
    }
    if (D == 2) {
        // two critical values among the four; the other two fibers have two
        // simple points each
        int crit = 0, plain = 0;
        for (auto* f : fibers) {
            if (is_pattern(*f, 0, 1))
                ++crit;
            else if (is_pattern(*f, 2, 0))
                ++plain;
            else
                return false;
        }
        return crit == 2 && plain == 2;
    }
    int half = static_cast<int>(D / 2);
    // pattern A: D/2 doubles over 0, 1, lambda; 4 simples + D/2-2 doubles over inf
    bool a = is_pattern(c.over_zero, 0, half) && is_pattern(c.over_one, 0, half) &&
             is_pattern(c.over_lambda, 0, half) &&
             is_pattern(c.over_infinity, 4, half - 2);
    if (a) return true;
    // pattern B: two fibers (one of them infinity) with 2 simples + D/2-1
    // doubles, the other two with D/2 doubles
    int mixed = 0, full = 0;
    if (!is_pattern(c.over_infinity, 2, half - 1)) return false;
    for (auto* f : {&c.over_zero, &c.over_one, &c.over_lambda}) {
        if (is_pattern(*f, 2, half - 1))
            ++mixed;
        else if (is_pattern(*f, 0, half))
            ++full;
        else
            return false;
    }
    return mixed == 1 && full == 2;
}

namespace {
UniPoly poly_scale_arg(const UniPoly& p, const CBall& s) {
    // p(s x): coefficient i multiplied by s^i
    UniPoly out;
    out.coeffs.reserve(p.coeffs.size());
    CBall pw = CBall::from_si(1, s.precision());
    for (size_t i = 0; i < p.coeffs.size(); ++i) {
        out.coeffs.push_back(p.coeffs[i] * pw);
        pw = pw * s;
    }
    return out;
}
} // namespace

HFunction s3_transport(const HFunction& h, S3Move move) {
    mpfr_prec_t prec = std::max<mpfr_prec_t>(h.num.precision(), h.lambda.precision());
    const CBall one = CBall::from_si(1, prec);
    if (!h.lambda.is_nonzero() || !h.lambda.certifiably_distinct(one))
        throw LambdaDegenerate("s3_transport: lambda in {0,1}");
    HFunction out;
    if (move == S3Move::OneMinus) {
        // (1 - h(1-x), 1 - lambda)
        UniPoly nm = h.num.compose_linear_si(-1, 1);
        UniPoly dn = h.den.compose_linear_si(-1, 1);
        out.num = dn - nm;
        out.den = dn;
        out.lambda = one - h.lambda;
    } else {
        // (h(lambda x)/lambda, 1/lambda)
        out.num = poly_scale_arg(h.num, h.lambda);
        out.den = poly_scale_arg(h.den, h.lambda).scale(h.lambda);
        out.lambda = h.lambda.inv();
    }
    return out;
}

std::vector<CBall> s3_orbit(const CBall& lambda) {
    mpfr_prec_t p = lambda.precision();
    CBall one = CBall::from_si(1, p);
    CBall oml = one - lambda;
    CBall lm1 = lambda - one;
    return {lambda,       oml,
            lambda.inv(), oml.inv(),
            lm1 / lambda, lambda / lm1};
}

} // namespace cmlj
