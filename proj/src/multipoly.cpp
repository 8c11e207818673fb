#include "cmlj/multipoly.hpp"

#include <sstream>

#include "cmlj/errors.hpp"

namespace cmlj {

MultiPoly MultiPoly::constant(int nvars, const mpq_class& c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_[Expo(nvars, 0)] = c;
    return p;
}
MultiPoly MultiPoly::constant_si(int nvars, long c) {
    return constant(nvars, mpq_class(c));
}
MultiPoly MultiPoly::var(int nvars, int index) {
    MultiPoly p(nvars);
    Expo e(nvars, 0);
    e[index] = 1;
    p.terms_[e] = 1;
    return p;
}

void MultiPoly::add_term(const Expo& e, const mpq_class& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}
MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, mpq_class(-c));
    return r;
}
MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}
MultiPoly MultiPoly::scale(const mpq_class& s) const {
    MultiPoly r(nvars_);
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
    return r;
}
MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r(nvars_);
    Expo e(nvars_, 0);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            for (int i = 0; i < nvars_; ++i)
                e[i] = static_cast<std::uint8_t>(e1[i] + e2[i]);
            r.add_term(e, c1 * c2);
        }
    return r;
}
MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Expo e2 = e;
        e2[var] -= 1;
        r.add_term(e2, c * e[var]);
    }
    return r;
}

std::complex<double> MultiPoly::eval_cd(const std::vector<std::complex<double>>& pt) const {
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t(c.get_d(), 0.0);
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= pt[i];
        acc += t;
    }
    return acc;
}

MpComplex MultiPoly::eval_mp(const std::vector<MpComplex>& pt) const {
    mpfr_prec_t p = pt.empty() ? 256 : pt[0].precision();
    MpComplex acc(p);
    mpfr_t qf;
    mpfr_init2(qf, p);
    for (const auto& [e, c] : terms_) {
        MpComplex t(p);
        mpfr_set_q(qf, c.get_mpq_t(), MPFR_RNDN);
        mpfr_set(t.re(), qf, MPFR_RNDN);
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t = t * pt[i];
        acc += t;
    }
    mpfr_clear(qf);
    return acc;
}

CBall ball_from_mpq(const mpq_class& q, mpfr_prec_t prec) {
    mpfr_t t, zero;
    mpfr_init2(t, prec);
    mpfr_init2(zero, prec);
    mpfr_set_zero(zero, 1);
    int in = mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
    CBall r = CBall::from_mid(t, zero, prec);
    if (in != 0 && !mpfr_zero_p(t))
        r.add_error_pow2(mpfr_get_exp(t) - static_cast<long>(prec) + 1);
    mpfr_clear(zero);
    mpfr_clear(t);
    return r;
}

CBall MultiPoly::eval_ball(const std::vector<CBall>& pt) const {
    mpfr_prec_t p = 256;
    for (const auto& b : pt) p = std::max(p, b.precision());
    CBall acc(p);
    for (const auto& [e, c] : terms_) {
        CBall t = ball_from_mpq(c, p);
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) t = t * pt[i];
        acc = acc + t;
    }
    return acc;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << "*" << names[i];
            if (e[i] > 1) os << "^" << static_cast<int>(e[i]);
        }
    }
    return os.str();
}

// ------------------------------------------------------------------ PolyInX

PolyInX PolyInX::constant(int nvars, const MultiPoly& m) {
    PolyInX p(nvars);
    p.c.push_back(m);
    return p;
}
PolyInX PolyInX::linear_minus(int nvars, const MultiPoly& sub) {
    PolyInX p(nvars);
    p.c.push_back(-sub);
    p.c.push_back(MultiPoly::constant_si(nvars, 1));
    return p;
}
PolyInX PolyInX::x_poly(int nvars) {
    PolyInX p(nvars);
    p.c.push_back(MultiPoly(nvars));
    p.c.push_back(MultiPoly::constant_si(nvars, 1));
    return p;
}
PolyInX PolyInX::operator*(const PolyInX& o) const {
    PolyInX r(nvars);
    if (c.empty() || o.c.empty()) return r;
    r.c.assign(c.size() + o.c.size() - 1, MultiPoly(nvars));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j)
            r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
    return r;
}
PolyInX PolyInX::operator-(const PolyInX& o) const {
    PolyInX r(nvars);
    size_t n = std::max(c.size(), o.c.size());
    r.c.assign(n, MultiPoly(nvars));
    for (size_t i = 0; i < n; ++i) {
        if (i < c.size()) r.c[i] = r.c[i] + c[i];
        if (i < o.c.size()) r.c[i] = r.c[i] - o.c[i];
    }
    return r;
}
PolyInX PolyInX::operator+(const PolyInX& o) const {
    PolyInX r(nvars);
    size_t n = std::max(c.size(), o.c.size());
    r.c.assign(n, MultiPoly(nvars));
    for (size_t i = 0; i < n; ++i) {
        if (i < c.size()) r.c[i] = r.c[i] + c[i];
        if (i < o.c.size()) r.c[i] = r.c[i] + o.c[i];
    }
    return r;
}
PolyInX PolyInX::scale_poly(const MultiPoly& m) const {
    PolyInX r(nvars);
    r.c.reserve(c.size());
    for (const auto& ci : c) r.c.push_back(ci * m);
    return r;
}

} // namespace cmlj
