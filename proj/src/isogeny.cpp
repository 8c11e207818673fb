#include "cmlj/isogeny.hpp"

#include "cmlj/errors.hpp"
#include "cmlj/modular.hpp"

namespace cmlj {

namespace {
void require_lambda_ok(const CBall& lambda, const char* who) {
    CBall one = CBall::from_si(1, lambda.precision());
    if (!lambda.is_nonzero() || !lambda.certifiably_distinct(one))
        throw LambdaDegenerate(std::string(who) + ": lambda in {0,1}");
}

CBall phi2(const CBall& u) {
    mpfr_prec_t p = u.precision();
    CBall s = u + u.inv();
    CBall den = s - CBall::from_si(2, p);
    if (!den.is_nonzero())
        throw DegenerateBranch("j2: u + 1/u = 2 (branch collapses)");
    return (s + CBall::from_si(14, p)).pow_ui(3).mul_si(16) / den.sqr();
}
} // namespace

std::vector<J2Candidate> j2_candidates(const CBall& lambda) {
    require_lambda_ok(lambda, "j2_candidates");
    mpfr_prec_t p = lambda.precision();
    CBall one = CBall::from_si(1, p);
    std::vector<J2Candidate> out;
    out.push_back({"l", lambda, phi2(lambda)});
    out.push_back({"1-l", one - lambda, phi2(one - lambda)});
    CBall w = (lambda - one) / lambda;
    out.push_back({"(l-1)/l", w, phi2(w)});
    return out;
}

CBall lambda2_of(const CBall& lambda, int sqrt_branch) {
    require_lambda_ok(lambda, "lambda2_of");
    mpfr_prec_t p = lambda.precision();
    CBall s = lambda.sqrt();
    if (sqrt_branch < 0) s = -s;
    return (s + s.inv() + CBall::from_si(2, p)).div_si(4);
}

UniPoly j3_quartic(const CBall& lambda) {
    require_lambda_ok(lambda, "j3_quartic");
    mpfr_prec_t p = lambda.precision();
    CBall s = lambda.sqrt();
    // (x^2 + 6 s x + s^2)^2 - 16 s x (1 + s x)^2
    // = x^4 + (12 s - 16 s^3) x^3 + 6 s^2 x^2 + (12 s^3 - 16 s) x + s^4
    UniPoly q;
    q.coeffs.push_back(s.pow_ui(4));
    q.coeffs.push_back(s.pow_ui(3).mul_si(12) - s.mul_si(16));
    q.coeffs.push_back(s.sqr().mul_si(6));
    q.coeffs.push_back(s.mul_si(12) - s.pow_ui(3).mul_si(16));
    q.coeffs.push_back(CBall::from_si(1, p));
    return q;
}

std::vector<J3Candidate> j3_candidates(const CBall& lambda) {
    UniPoly q = j3_quartic(lambda);
    mpfr_prec_t p = lambda.precision();
    std::vector<J3Candidate> out;
    for (const auto& x : poly_roots(q, p)) {
        J3Candidate c;
        c.sqrt_lambda_prime = x;
        c.lambda_prime = x.sqr();
        c.j = j_of_lambda(c.lambda_prime);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<ExactTau> isogeny_targets(const ExactTau& tau, int degree) {
    if (degree == 2)
        return {tau.moebius(2, 0, 0, 1), tau.moebius(1, 0, 0, 2), tau.moebius(1, 1, -1, 1)};
    if (degree == 3)
        return {tau.moebius(3, 0, 0, 1), tau.moebius(1, 0, 0, 3), tau.moebius(1, 2, -1, 1),
                tau.moebius(1, -2, 1, 1)};
    throw DomainError("isogeny_targets: degree must be 2 or 3");
}

std::vector<std::string> isogeny_target_names(int degree) {
    if (degree == 2) return {"2tau", "tau/2", "(tau+1)/(-tau+1)"};
    if (degree == 3) return {"3tau", "tau/3", "(tau+2)/(-tau+1)", "(tau-2)/(tau+1)"};
    throw DomainError("isogeny_target_names: degree must be 2 or 3");
}

std::vector<IsogenyStep> tower(const CBall& lambda0, const ExactTau& tau0,
                               const std::vector<int>& degrees,
                               const std::vector<int>& target_selector,
                               mpfr_prec_t oracle_precision) {
    if (degrees.size() != target_selector.size())
        throw DomainError("tower: degrees/target_selector size mismatch");
    std::vector<IsogenyStep> steps;
    CBall lambda = lambda0;
    ExactTau tau = tau0;
    for (size_t si = 0; si < degrees.size(); ++si) {
        int k = degrees[si];
        IsogenyStep step;
        step.degree = k;
        step.source_lambda = lambda;
        step.source_j = j_of_lambda(lambda);
        step.source_tau = tau;
        step.targets = isogeny_targets(tau, k);

        std::vector<CBall> lambdas, js;
        std::vector<std::string> branches;
        if (k == 2) {
            for (const auto& c : j2_candidates(lambda)) {
                branches.push_back(c.branch);
                // lambda' for the branch comes from the same closed form with
                // u in place of lambda
                lambdas.push_back(lambda2_of(c.u));
                js.push_back(c.j);
            }
        } else if (k == 3) {
            int idx = 0;
            for (const auto& c : j3_candidates(lambda)) {
                branches.push_back("root" + std::to_string(idx++));
                lambdas.push_back(c.lambda_prime);
                js.push_back(c.j);
            }
        } else {
            throw DomainError("tower: degree must be 2 or 3");
        }
        // oracle match: assign every candidate j to a target period
        std::vector<int> assignment = match(js, step.targets, 6, oracle_precision);
        // invert: per candidate, which target's oracle agrees
        for (size_t ci = 0; ci < js.size(); ++ci) {
            IsogenyStep::Cand c;
            c.branch = branches[ci];
            c.lambda_prime = lambdas[ci];
            c.j = js[ci];
            c.matched_target = -1;
            step.candidates.push_back(std::move(c));
        }
        for (size_t ti = 0; ti < step.targets.size(); ++ti)
            step.candidates[assignment[ti]].matched_target = static_cast<int>(ti);
        int want = target_selector[si];
        if (want < 0 || want >= static_cast<int>(step.targets.size()))
            throw DomainError("tower: bad target selector");
        step.chosen = assignment[want];
        // continue from the chosen branch
        lambda = step.candidates[step.chosen].lambda_prime;
        tau = step.targets[want];
        steps.push_back(std::move(step));
    }
    return steps;
}

} // namespace cmlj
