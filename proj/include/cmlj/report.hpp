#ifndef CMLJ_REPORT_HPP
#define CMLJ_REPORT_HPP

#include <string>

#include "json.hpp"

#include "cmlj/isogeny.hpp"
#include "cmlj/modular.hpp"
#include "cmlj/qforms.hpp"
#include "cmlj/solver.hpp"

namespace cmlj {

inline constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

// complex numbers: {"re": decimal string, "im": decimal string, "rad": decimal string}
json ball_to_json(const CBall& b, size_t digits);
CBall ball_from_json(const json& j, mpfr_prec_t prec);

json taurep_to_json(const TauRep& t, size_t digits);
json orbit_to_json(const OrbitRep& o, size_t digits);
json record_to_json(const SolutionRecord& r, size_t digits);
json group_to_json(const SolutionGroup& g, size_t digits);
json candidate_to_json(const AlgebraicCandidate& c, size_t digits);
json exact_tau_to_json(const ExactTau& t, size_t digits);
json isogeny_step_to_json(const IsogenyStep& s, size_t digits);

struct RunReport {
    std::string command;
    json config;
    json results;
    double timing_seconds = 0.0;
    std::string version = kVersion;

    json to_json() const;
    static RunReport from_json(const json& j);
    std::string render_text() const;
};

inline size_t digits_for(mpfr_prec_t prec) {
    return static_cast<size_t>(static_cast<double>(prec) * 0.30103) + 2;
}

} // namespace cmlj

#endif
