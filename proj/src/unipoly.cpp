#include "cmlj/unipoly.hpp"

#include <algorithm>
#include <cmath>

#include "cmlj/mpcomplex.hpp"

namespace cmlj {

UniPoly UniPoly::derivative() const {
    UniPoly d;
    if (coeffs.size() <= 1) {
        d.coeffs.push_back(CBall(precision()));
        return d;
    }
    d.coeffs.reserve(coeffs.size() - 1);
    for (size_t k = 1; k < coeffs.size(); ++k)
        d.coeffs.push_back(coeffs[k].mul_si(static_cast<long>(k)));
    return d;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (coeffs.empty() || o.coeffs.empty()) return UniPoly();
    mpfr_prec_t p = std::max(precision(), o.precision());
    UniPoly r;
    r.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, CBall(p));
    for (size_t i = 0; i < coeffs.size(); ++i)
        for (size_t j = 0; j < o.coeffs.size(); ++j)
            r.coeffs[i + j] = r.coeffs[i + j] + coeffs[i] * o.coeffs[j];
    return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    mpfr_prec_t p = std::max(precision(), o.precision());
    UniPoly r;
    size_t n = std::max(coeffs.size(), o.coeffs.size());
    r.coeffs.assign(n, CBall(p));
    for (size_t i = 0; i < n; ++i) {
        if (i < coeffs.size()) r.coeffs[i] = r.coeffs[i] + coeffs[i];
        if (i < o.coeffs.size()) r.coeffs[i] = r.coeffs[i] - o.coeffs[i];
    }
    return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    mpfr_prec_t p = std::max(precision(), o.precision());
    UniPoly r;
    size_t n = std::max(coeffs.size(), o.coeffs.size());
    r.coeffs.assign(n, CBall(p));
    for (size_t i = 0; i < n; ++i) {
        if (i < coeffs.size()) r.coeffs[i] = r.coeffs[i] + coeffs[i];
        if (i < o.coeffs.size()) r.coeffs[i] = r.coeffs[i] + o.coeffs[i];
    }
    return r;
}

UniPoly UniPoly::scale(const CBall& s) const {
    UniPoly r;
    r.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) r.coeffs.push_back(c * s);
    return r;
}

UniPoly UniPoly::compose_linear_si(long a, long b) const {
    // p(a x + b) by Horner over polynomials
    mpfr_prec_t p = precision();
    UniPoly acc;
    acc.coeffs.push_back(CBall(p));
    for (size_t k = coeffs.size(); k-- > 0;) {
        // acc = acc*(a x + b) + c_k
        UniPoly next;
        next.coeffs.assign(acc.coeffs.size() + 1, CBall(p));
        for (size_t i = 0; i < acc.coeffs.size(); ++i) {
            next.coeffs[i + 1] = next.coeffs[i + 1] + acc.coeffs[i].mul_si(a);
            next.coeffs[i] = next.coeffs[i] + acc.coeffs[i].mul_si(b);
        }
        next.coeffs[0] = next.coeffs[0] + coeffs[k];
        acc = std::move(next);
    }
    while (acc.coeffs.size() > 1 && acc.coeffs.back().contains_zero() &&
           acc.coeffs.back().radius().is_zero())
        acc.coeffs.pop_back();
    return acc;
}

UniPoly UniPoly::shift_up(int k) const {
    UniPoly r;
    r.coeffs.assign(coeffs.size() + static_cast<size_t>(k), CBall(precision()));
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i + k] = coeffs[i];
    return r;
}

UniPoly UniPoly::from_si_coeffs(const std::vector<long>& c, mpfr_prec_t prec) {
    UniPoly r;
    r.coeffs.reserve(c.size());
    for (long v : c) r.coeffs.push_back(CBall::from_si(v, prec));
    return r;
}
UniPoly UniPoly::linear(const CBall& r0) {
    UniPoly r;
    r.coeffs.push_back(-r0);
    r.coeffs.push_back(CBall::from_si(1, r0.precision()));
    return r;
}
UniPoly UniPoly::constant(const CBall& c) {
    UniPoly r;
    r.coeffs.push_back(c);
    return r;
}

CBall poly_eval(const UniPoly& p, const CBall& z) {
    if (p.coeffs.empty()) return CBall(z.precision());
    CBall acc = p.coeffs.back();
    for (size_t k = p.coeffs.size() - 1; k-- > 0;)
        acc = acc * z + p.coeffs[k];
    return acc;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
double unit_double(std::uint64_t& s) {
    return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

MpComplex eval_mp(const std::vector<MpComplex>& c, const MpComplex& x) {
    MpComplex acc = c.back();
    for (size_t k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
    return acc;
}

// One Aberth-Ehrlich pass at precision wp; returns approximations or empty on
// failure to converge.
std::vector<MpComplex> aberth(const std::vector<MpComplex>& monic, mpfr_prec_t wp,
                              std::uint64_t seed) {
    int d = static_cast<int>(monic.size()) - 1;
    std::vector<MpComplex> dcoef;
    dcoef.reserve(d);
    for (int k = 1; k <= d; ++k) {
        MpComplex t = MpComplex::from_si(k, wp) * monic[k];
        dcoef.push_back(t);
    }
    // Cauchy-style inclusion radius for the initial circle
    double lg_max = -1e18;
    for (int k = 0; k < d; ++k) lg_max = std::max(lg_max, monic[k].abs_log2());
    double radius = 1.0 + std::exp2(std::min(500.0, lg_max));
    std::uint64_t rng = seed ^ 0xABE27D5F3C9E11ULL;

    std::vector<MpComplex> x;
    x.reserve(d);
    for (int i = 0; i < d; ++i) {
        double th = 2.0 * M_PI * (static_cast<double>(i) / d) + 0.3763221;
        x.push_back(MpComplex::from_cd(std::polar(radius * (1.0 + 0.05 * i / std::max(1, d)), th), wp));
    }
    const double conv_log2 = -static_cast<double>(wp) + 8;
    int max_iters = 600;
    int stagnant = 0;
    double prev_worst = 1e300;
    for (int it = 0; it < max_iters; ++it) {
        double worst = -1e18;
        int moved = 0;
        for (int i = 0; i < d; ++i) {
            MpComplex pv = eval_mp(monic, x[i]);
            if (pv.is_zero()) continue;
            MpComplex dv = eval_mp(dcoef, x[i]);
            if (dv.is_zero()) {
                // nudge off the critical point
                MpComplex nudge = MpComplex::from_cd(
                    {1e-3 * (unit_double(rng) - 0.5), 1e-3 * (unit_double(rng) - 0.5)}, wp);
                x[i] += nudge;
                worst = std::max(worst, 0.0);
                ++moved;
                continue;
            }
            MpComplex newton = pv / dv;
            MpComplex s(wp);
            bool collide = false;
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                MpComplex diff = x[i] - x[j];
                if (diff.is_zero()) {
                    collide = true;
                    break;
                }
                s += MpComplex::from_si(1, wp) / diff;
            }
            if (collide) {
                MpComplex nudge = MpComplex::from_cd(
                    {1e-4 * (unit_double(rng) - 0.5), 1e-4 * (unit_double(rng) - 0.5)}, wp);
                x[i] += nudge;
                ++moved;
                worst = std::max(worst, 0.0);
                continue;
            }
            MpComplex denom = MpComplex::from_si(1, wp) - newton * s;
            MpComplex w = denom.is_zero() ? newton : newton / denom;
            x[i] -= w;
            double wl = w.abs_log2() - std::max(0.0, x[i].abs_log2());
            worst = std::max(worst, wl);
            if (wl > conv_log2) ++moved;
        }
        if (moved == 0 || worst <= conv_log2) return x;
        if (worst >= prev_worst - 0.1) {
            if (++stagnant > 60) {
                // random restart perturbation, deterministic under seed
                for (int i = 0; i < d; ++i) {
                    double sc = std::exp2(worst / 2.0);
                    MpComplex nudge = MpComplex::from_cd(
                        {sc * (unit_double(rng) - 0.5), sc * (unit_double(rng) - 0.5)}, wp);
                    x[i] += nudge;
                }
                stagnant = 0;
            }
        } else {
            stagnant = 0;
        }
        prev_worst = worst;
    }
    return x; // best effort; certification decides
}

} // namespace

std::vector<CBall> poly_roots(const UniPoly& p, mpfr_prec_t target_precision,
                              std::uint64_t seed) {
    if (p.degree() < 1) throw DomainError("poly_roots: degree must be >= 1");
    if (!p.leading_nonzero())
        throw DomainError("poly_roots: leading coefficient not certifiably nonzero");

    // strip exact zero roots
    UniPoly q = p;
    int zero_roots = 0;
    while (q.coeffs.size() > 1 && q.coeffs.front().radius().is_zero() &&
           mpfr_zero_p(q.coeffs.front().re_mid()) && mpfr_zero_p(q.coeffs.front().im_mid())) {
        q.coeffs.erase(q.coeffs.begin());
        ++zero_roots;
    }
    int d = q.degree();
    std::vector<CBall> out;
    for (int i = 0; i < zero_roots; ++i) out.push_back(CBall(target_precision));
    if (d == 0) return out;

    UniPoly dq = q.derivative();
    const mpfr_prec_t cap = std::max<mpfr_prec_t>(8 * target_precision, 2048);
    for (mpfr_prec_t wp = target_precision + 96; wp <= cap; wp = wp * 2) {
        std::vector<MpComplex> monic;
        monic.reserve(d + 1);
        MpComplex lead = MpComplex::from_ball_mid(q.coeffs.back(), wp);
        for (int k = 0; k <= d; ++k)
            monic.push_back(MpComplex::from_ball_mid(q.coeffs[k], wp) / lead);
        std::vector<MpComplex> approx = aberth(monic, wp, seed);

        // enclosure radii: min( deg*|p(x)|/|p'(x)| , (|p(x)|/|lc|)^(1/deg) )
        std::vector<CBall> roots;
        roots.reserve(d);
        bool cert_ok = true;
        UReal lc_lb = q.coeffs.back().abs_lb_as_ureal();
        for (int i = 0; i < d && cert_ok; ++i) {
            CBall xb = approx[i].to_ball();
            CBall pv = poly_eval(q, xb);
            CBall dv = poly_eval(dq, xb);
            UReal pv_ub = pv.abs_ub();
            UReal rad = UReal::zero();
            bool have = false;
            UReal dv_lb = dv.abs_lb_as_ureal();
            if (!dv_lb.is_zero()) {
                UReal r1;
                mpfr_div(r1.raw(), pv_ub.raw(), dv_lb.raw(), MPFR_RNDU);
                mpfr_mul_ui(r1.raw(), r1.raw(), static_cast<unsigned long>(d), MPFR_RNDU);
                rad = r1;
                have = true;
            }
            if (!lc_lb.is_zero()) {
                UReal r2;
                mpfr_div(r2.raw(), pv_ub.raw(), lc_lb.raw(), MPFR_RNDU);
                mpfr_rootn_ui(r2.raw(), r2.raw(), static_cast<unsigned long>(d), MPFR_RNDU);
                if (!have || r2 < rad) rad = r2;
                have = true;
            }
            if (!have) {
                cert_ok = false;
                break;
            }
            xb.add_error(rad);
            roots.push_back(std::move(xb));
        }
        if (!cert_ok) continue;

        // separation among distinct roots
        bool separated = true;
        for (int i = 0; i < d && separated; ++i)
            for (int j = i + 1; j < d; ++j)
                if (!roots[i].certifiably_distinct(roots[j])) {
                    separated = false;
                    break;
                }
        if (separated) {
            for (auto& r : roots) out.push_back(r.at_precision(target_precision + 32));
            std::sort(out.begin(), out.end(), CBall::mid_less);
            return out;
        }
    }
    throw PrecisionExhausted(
        "poly_roots: root separation unattainable (multiple root or precision budget)");
}

std::vector<RootCluster> poly_roots_clustered(const UniPoly& p, mpfr_prec_t prec,
                                              long cluster_log2_tol, std::uint64_t seed) {
    if (p.degree() < 1) return {};
    if (!p.leading_nonzero())
        throw DomainError("poly_roots_clustered: leading coefficient not certifiably nonzero");
    UniPoly q = p;
    int zero_roots = 0;
    while (q.coeffs.size() > 1 && q.coeffs.front().radius().is_zero() &&
           mpfr_zero_p(q.coeffs.front().re_mid()) && mpfr_zero_p(q.coeffs.front().im_mid())) {
        q.coeffs.erase(q.coeffs.begin());
        ++zero_roots;
    }
    int d = q.degree();
    mpfr_prec_t wp = prec + 128;
    std::vector<MpComplex> approx;
    if (d >= 1) {
        std::vector<MpComplex> monic;
        monic.reserve(d + 1);
        MpComplex lead = MpComplex::from_ball_mid(q.coeffs.back(), wp);
        for (int k = 0; k <= d; ++k)
            monic.push_back(MpComplex::from_ball_mid(q.coeffs[k], wp) / lead);
        approx = aberth(monic, wp, seed);
    }
    std::vector<CBall> pts;
    for (int i = 0; i < zero_roots; ++i) pts.push_back(CBall(prec));
    for (const auto& a : approx) pts.push_back(a.to_ball().at_precision(prec));
    std::sort(pts.begin(), pts.end(), CBall::mid_less);

    UReal tol = UReal::pow2(cluster_log2_tol);
    std::vector<RootCluster> clusters;
    std::vector<bool> used(pts.size(), false);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        RootCluster cl{pts[i], 1};
        used[i] = true;
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (used[j]) continue;
            if (cl.center.mid_dist_ub(pts[j]) <= tol) {
                used[j] = true;
                ++cl.multiplicity;
            }
        }
        cl.center.add_error(tol);
        clusters.push_back(std::move(cl));
    }
    return clusters;
}

} // namespace cmlj
