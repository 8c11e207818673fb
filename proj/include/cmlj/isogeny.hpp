#ifndef CMLJ_ISOGENY_HPP
#define CMLJ_ISOGENY_HPP

#include <string>
#include <vector>

#include "cmlj/ball.hpp"
#include "cmlj/qforms.hpp"
#include "cmlj/unipoly.hpp"

namespace cmlj {

// 16 (u + 1/u + 14)^3 / (u + 1/u - 2)^2 over the three branches
// u in {lambda, 1-lambda, (lambda-1)/lambda}
struct J2Candidate {
    std::string branch; // "l", "1-l", "(l-1)/l"
    CBall u;
    CBall j;
};
std::vector<J2Candidate> j2_candidates(const CBall& lambda);

// lambda' = (sqrt(lambda) + 1/sqrt(lambda) + 2)/4; sign flips the root branch
CBall lambda2_of(const CBall& lambda, int sqrt_branch = +1);

// roots x of (x^2 + 6 s x + s^2)^2 - 16 s x (1 + s x)^2 with s = sqrt(lambda);
// lambda' = x^2 per root
struct J3Candidate {
    CBall sqrt_lambda_prime;
    CBall lambda_prime;
    CBall j;
};
// the quartic itself (coefficients in x, lowest first)
UniPoly j3_quartic(const CBall& lambda);
std::vector<J3Candidate> j3_candidates(const CBall& lambda);

// target periods reachable by a degree-k isogeny step
std::vector<ExactTau> isogeny_targets(const ExactTau& tau, int degree);
std::vector<std::string> isogeny_target_names(int degree);

struct IsogenyStep {
    int degree = 2;
    CBall source_lambda;
    CBall source_j;
    ExactTau source_tau;
    // candidate values with their oracle-matched targets (-1: unmatched)
    struct Cand {
        std::string branch;
        CBall lambda_prime;
        CBall j;
        int matched_target = -1;
    };
    std::vector<Cand> candidates;
    std::vector<ExactTau> targets;
    int chosen = -1; // index into candidates, when a target was requested
};

// Walk a tower of degree-2/3 steps from (lambda0, tau0). target_selector[i]
// names the step's target period by index into isogeny_targets(tau, k).
std::vector<IsogenyStep> tower(const CBall& lambda0, const ExactTau& tau0,
                               const std::vector<int>& degrees,
                               const std::vector<int>& target_selector,
                               mpfr_prec_t oracle_precision = 256);

} // namespace cmlj

#endif
