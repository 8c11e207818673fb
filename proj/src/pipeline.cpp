#include "cmlj/pipeline.hpp"

#include <fstream>
#include <iostream>

#include "cmlj/errors.hpp"
#include "cmlj/isogeny.hpp"

namespace cmlj {

std::vector<PolySystem> systems_for(long long D, int system_filter) {
    std::vector<PolySystem> out;
    if (D == 2) {
        if (system_filter > 0)
            throw DomainError("--system does not apply to D=2 (case systems run together)");
        for (auto& c : build_d2_cases())
            for (auto& s : c.subsystems) out.push_back(std::move(s));
        return out;
    }
    std::vector<SystemVariant> vs;
    if (D % 2 == 1)
        vs = {SystemVariant::S1, SystemVariant::S2, SystemVariant::S3};
    else
        vs = {SystemVariant::S4, SystemVariant::S5, SystemVariant::S6};
    for (auto v : vs) {
        if (is_perfect_square(D) &&
            (v == SystemVariant::S1 || v == SystemVariant::S4))
            continue;
        if (system_filter > 0 && variant_index(v) != system_filter) continue;
        out.push_back(build_system(D, v));
    }
    if (out.empty()) throw DomainError("no compatible systems for this D/--system choice");
    return out;
}

CoverageResult coverage_check(long long D, const std::vector<SolutionGroup>& groups,
                              mpfr_prec_t prec, size_t digits) {
    CoverageResult out;
    auto orbits = enumerate_orbits(D, true);
    json rows = json::array();
    std::vector<int> group_hits(groups.size(), 0);
    for (const auto& orb : orbits) {
        json row;
        row["tau"] = ball_to_json(orb.rep.tau(prec), digits);
        row["rep"] = {orb.rep.D, orb.rep.a, orb.rep.u, orb.rep.b};
        if (orb.square_policy_exempt(D)) {
            row["status"] = "exempt-multiplication-type";
            rows.push_back(std::move(row));
            continue;
        }
        ThetaJ th = j_theta_oracle(orb.rep.tau(prec + 64), prec);
        row["oracle_j"] = ball_to_json(th.j_tau, digits);
        int found = -1;
        for (size_t g = 0; g < groups.size(); ++g) {
            if (!th.j_tau.certifiably_distinct(groups[g].rep.j_value)) {
                found = static_cast<int>(g);
                break;
            }
        }
        if (found >= 0) {
            ++group_hits[found];
            row["status"] = "matched";
            row["matched_system"] = groups[found].rep.system_name;
            row["matched_j"] = ball_to_json(groups[found].rep.j_value, digits);
        } else {
            row["status"] = "gap";
            out.complete = false;
        }
        rows.push_back(std::move(row));
    }
    json spurious = json::array();
    for (size_t g = 0; g < groups.size(); ++g) {
        if (group_hits[g] == 0) {
            spurious.push_back(ball_to_json(groups[g].rep.j_value, digits));
            out.complete = false;
        } else if (group_hits[g] > 1) {
            out.complete = false;
        }
    }
    out.verdict = json{{"orbits", std::move(rows)},
                       {"unmatched_solver_j", std::move(spurious)},
                       {"complete", out.complete}};
    return out;
}

std::vector<SolutionGroup> solve_all(long long D, const SolverConfig& cfg) {
    std::vector<SolutionRecord> pool;
    for (const auto& sys : systems_for(D, 0)) {
        try {
            for (const auto& g : solve(sys, cfg))
                for (const auto& m : g.members) pool.push_back(m);
        } catch (const NoSolutionsFound&) {
        }
    }
    if (pool.empty()) throw NoSolutionsFound("solve_all: no solutions for any system");
    return dedup(pool, cfg.dedup_tol_log2);
}

namespace {
json load_golden_file(const std::string& dir, const std::string& name) {
    std::ifstream in(dir + "/" + name);
    if (!in) throw DomainError("cannot open golden file " + dir + "/" + name);
    json j;
    in >> j;
    return j;
}
} // namespace

TableResult table_pipeline(const std::string& golden_dir, const SolverConfig& cfg_in,
                           long long height_bound, bool log_rows) {
    SolverConfig cfg = cfg_in;
    cfg.precision = std::max<mpfr_prec_t>(cfg.precision, 320);
    mpfr_prec_t prec = cfg.precision;
    size_t digits = digits_for(prec);
    json golden = load_golden_file(golden_dir, "table1.json");

    std::vector<SolutionRecord> pool;
    for (long long D : {2LL, 3LL, 4LL})
        for (const auto& sys : systems_for(D, 0)) {
            try {
                for (const auto& g : solve(sys, cfg))
                    for (const auto& m : g.members) pool.push_back(m);
            } catch (const NoSolutionsFound&) {
            }
        }
    auto merged = dedup(pool, cfg.dedup_tol_log2);

    TableResult result;
    json jrows = json::array();
    for (const auto& grow : golden.at("rows")) {
        ++result.total;
        std::string tau_label = grow.at("tau").get<std::string>();
        auto q = grow.at("tau_quadratic");
        ExactTau et = ExactTau::from_quadratic(q[0].get<long long>(), q[1].get<long long>(),
                                               q[2].get<long long>());
        CBall golden_j = CBall::from_decimal(grow.at("j").at("re").get<std::string>(),
                                             grow.at("j").at("im").get<std::string>(), prec);
        CBall golden_lambda =
            CBall::from_decimal(grow.at("lambda").at("re").get<std::string>(),
                                grow.at("lambda").at("im").get<std::string>(), prec);
        std::vector<std::string> golden_poly;
        for (const auto& c : grow.at("j_minpoly"))
            golden_poly.push_back(c.get<std::string>());
        std::string golden_ring = grow.at("ring").get<std::string>();

        bool ok = false;
        std::string note;
        json detail;
        try {
            ThetaJ th = j_theta_oracle(et.value(prec + 64), prec);
            CBall pipeline_j(prec), pipeline_lambda(prec);
            std::string route;
            const SolutionGroup* direct = nullptr;
            for (const auto& g : merged)
                if (!g.rep.j_value.certifiably_distinct(th.j_tau)) {
                    direct = &g;
                    break;
                }
            if (direct) {
                pipeline_j = direct->rep.j_value;
                pipeline_lambda = direct->rep.lambda;
                route = "solve:" + direct->rep.system_name;
            } else {
                bool done = false;
                for (int deg : {2, 3}) {
                    if (done) break;
                    for (const auto& g : merged) {
                        if (done) break;
                        std::vector<CBall> js, lams;
                        try {
                            if (deg == 2) {
                                for (const auto& c : j2_candidates(g.rep.lambda)) {
                                    js.push_back(c.j);
                                    lams.push_back(lambda2_of(c.u));
                                }
                            } else {
                                for (const auto& c : j3_candidates(g.rep.lambda)) {
                                    js.push_back(c.j);
                                    lams.push_back(c.lambda_prime);
                                }
                            }
                        } catch (const Error&) {
                            continue;
                        }
                        for (size_t ci = 0; ci < js.size(); ++ci) {
                            if (!th.j_tau.certifiably_distinct(js[ci])) {
                                pipeline_j = js[ci];
                                pipeline_lambda = lams[ci];
                                route = "isogeny" + std::to_string(deg) +
                                        ":from-j=" + g.rep.j_value.re_string(8);
                                done = true;
                                break;
                            }
                        }
                    }
                }
                if (!done) throw RowMismatch("no pipeline route reaches this period");
            }

            // golden decimals carry ~60 digits; require agreement to >= 40
            // significant digits
            UReal jtol = golden_j.abs_ub() * UReal::pow2(-133);
            bool j_match = pipeline_j.mid_dist_ub(golden_j) < jtol;
            bool oracle_match = !pipeline_j.certifiably_distinct(th.j_tau);
            auto cand = recognize_quadratic(pipeline_j.at_precision(prec),
                                            mpz_class(std::to_string(height_bound)));
            bool poly_match = cand.has_value() && cand->min_poly == golden_poly;
            bool ring_match = et.ring_label() == golden_ring;
            bool lambda_match = false;
            for (const auto& orb : s3_orbit(golden_lambda))
                if (pipeline_lambda.mid_dist_ub(orb) < UReal::pow2(-100))
                    lambda_match = true;

            ok = j_match && oracle_match && poly_match && ring_match && lambda_match;
            detail = json{{"route", route},
                          {"j", ball_to_json(pipeline_j, digits)},
                          {"oracle_j", ball_to_json(th.j_tau, digits)},
                          {"lambda", ball_to_json(pipeline_lambda, digits)},
                          {"recognized",
                           cand ? candidate_to_json(*cand, digits) : json(nullptr)},
                          {"ring", et.ring_label()},
                          {"checks",
                           {{"j_vs_golden", j_match},
                            {"j_vs_oracle", oracle_match},
                            {"min_poly", poly_match},
                            {"ring", ring_match},
                            {"lambda_orbit", lambda_match}}}};
            if (!ok) note = "certification failed";
        } catch (const Error& e) {
            note = e.what();
        }
        if (ok) ++result.certified;
        json jr{{"tau", tau_label}, {"certified", ok}};
        if (!note.empty()) jr["note"] = note;
        if (!detail.is_null()) jr["detail"] = detail;
        jrows.push_back(std::move(jr));
        if (log_rows)
            std::cerr << (ok ? "[table] PASS " : "[table] FAIL ") << tau_label
                      << (note.empty() ? "" : "  (" + note + ")") << "\n";
    }
    result.rows = std::move(jrows);
    return result;
}

} // namespace cmlj
