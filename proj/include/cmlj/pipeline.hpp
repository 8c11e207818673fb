#ifndef CMLJ_PIPELINE_HPP
#define CMLJ_PIPELINE_HPP

#include <string>
#include <vector>

#include "cmlj/report.hpp"
#include "cmlj/solver.hpp"

namespace cmlj {

// Every polynomial system the solver runs for a degree: the nine D=2 case
// systems, or the parity-compatible variants minus the perfect-square
// exclusions. system_filter > 0 restricts to a single variant (D >= 3).
std::vector<PolySystem> systems_for(long long D, int system_filter);

struct CoverageResult {
    json verdict;
    bool complete = true;
};
// Bijection check between enumerated orbits and solver j-values; orbits whose
// every representation predicts the excluded multiplication-type system are
// exempt for perfect-square D.
CoverageResult coverage_check(long long D, const std::vector<SolutionGroup>& groups,
                              mpfr_prec_t prec, size_t digits);

// solve every system for D and merge the records into S3-grouped classes
std::vector<SolutionGroup> solve_all(long long D, const SolverConfig& cfg);

struct TableResult {
    json rows;
    int certified = 0;
    int total = 0;
};
// Recompute every golden-table row end to end: enumerate/solve, transport
// along degree-2/3 isogenies where needed, match by the theta oracle,
// recognize the algebraic value, and diff against the golden data.
TableResult table_pipeline(const std::string& golden_dir, const SolverConfig& cfg,
                           long long height_bound, bool log_rows = false);

} // namespace cmlj

#endif
