#ifndef CMLJ_SOLVER_HPP
#define CMLJ_SOLVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cmlj/ramsys.hpp"

namespace cmlj {

struct SolverConfig {
    int starts = 0;               // 0 = auto (4000 * D)
    std::uint64_t seed = 0;
    int max_iters = 80;           // per start, double-precision stage
    long newton_tol_log2 = -80;   // certified residual threshold, 2^tol
    long dedup_tol_log2 = -40;
    mpfr_prec_t precision = 256;
    double degeneracy_tol = 1e-5; // min pairwise distance / distance from {0,1}

    int effective_starts(long long D) const {
        return starts > 0 ? starts : static_cast<int>(4000 * D);
    }
};

struct SolutionRecord {
    Assignment assignment;        // indexed like PolySystem::unknowns
    CBall residual_norm;
    CBall lambda;
    CBall j_value;
    long long D = 0;
    SystemVariant variant = SystemVariant::S1;
    int d2_q = -1, d2_split = -1;
    std::string system_name;
};

// one solution up to the S3 action; members stores every record of the orbit
struct SolutionGroup {
    SolutionRecord rep;
    std::vector<SolutionRecord> members;
};

// Deduplicated certified solutions. Deterministic for fixed (sys, cfg).
// Throws NoSolutionsFound when every start fails certification.
std::vector<SolutionGroup> solve(const PolySystem& sys, const SolverConfig& cfg);

// raw records -> S3-grouped, coordinate-deduplicated groups
std::vector<SolutionGroup> dedup(const std::vector<SolutionRecord>& records,
                                 long dedup_tol_log2);

// Newton-polish an existing record to a higher precision.
SolutionRecord refine(const PolySystem& sys, const SolutionRecord& record,
                      mpfr_prec_t target_precision);

} // namespace cmlj

#endif
