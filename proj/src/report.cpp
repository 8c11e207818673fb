#include "cmlj/report.hpp"

#include <sstream>

namespace cmlj {

json ball_to_json(const CBall& b, size_t digits) {
    return json{{"re", b.re_string(digits)},
                {"im", b.im_string(digits)},
                {"rad", b.rad_string()}};
}

CBall ball_from_json(const json& j, mpfr_prec_t prec) {
    CBall b = CBall::from_decimal(j.at("re").get<std::string>(),
                                  j.at("im").get<std::string>(), prec);
    std::string rad = j.at("rad").get<std::string>();
    mpfr_t r;
    mpfr_init2(r, UReal::kPrec);
    if (mpfr_set_str(r, rad.c_str(), 10, MPFR_RNDU) == 0 && mpfr_sgn(r) > 0) {
        UReal u;
        mpfr_set(u.raw(), r, MPFR_RNDU);
        b.add_error(u);
    }
    mpfr_clear(r);
    return b;
}

json taurep_to_json(const TauRep& t, size_t digits) {
    QuadForm f = form_of(t);
    return json{{"D", t.D},      {"a", t.a},
                {"u", t.u},      {"b", t.b},
                {"tau", ball_to_json(t.tau(256), digits)},
                {"form", {f.a, f.b, f.c}}};
}

json orbit_to_json(const OrbitRep& o, size_t digits) {
    json aliases = json::array();
    for (size_t i = 0; i < o.aliases.size(); ++i) {
        json a = taurep_to_json(o.aliases[i], digits);
        const auto& v = o.alias_variants[i];
        a["variant"] = v.ambiguous ? variant_name(v.primary) + "|" + variant_name(v.secondary)
                                   : variant_name(v.primary);
        aliases.push_back(std::move(a));
    }
    OrderDesc od = endo_order(o.rep);
    ExactTau et = ExactTau::from_taurep(o.rep);
    json out = taurep_to_json(o.rep, digits);
    out["reduced_form"] = {o.reduced.a, o.reduced.b, o.reduced.c};
    out["aliases"] = std::move(aliases);
    out["order"] = {{"field_disc", od.field_disc},
                    {"conductor_divisor", od.conductor_divisor},
                    {"ring", et.ring_label()}};
    const auto& v = o.alias_variants[0];
    out["variant"] = v.ambiguous ? variant_name(v.primary) + "|" + variant_name(v.secondary)
                                 : variant_name(v.primary);
    out["square_policy_exempt"] = o.square_policy_exempt(o.rep.D);
    return out;
}

json record_to_json(const SolutionRecord& r, size_t digits) {
    json assn = json::array();
    for (const auto& b : r.assignment) assn.push_back(ball_to_json(b, digits));
    return json{{"system", r.system_name},
                {"assignment", std::move(assn)},
                {"lambda", ball_to_json(r.lambda, digits)},
                {"j", ball_to_json(r.j_value, digits)},
                {"residual_norm", r.residual_norm.rad_string()}};
}

json group_to_json(const SolutionGroup& g, size_t digits) {
    json members = json::array();
    for (const auto& m : g.members) members.push_back(record_to_json(m, digits));
    return json{{"rep", record_to_json(g.rep, digits)}, {"members", std::move(members)}};
}

json candidate_to_json(const AlgebraicCandidate& c, size_t digits) {
    json out{{"degree", c.degree},
             {"min_poly", c.min_poly},
             {"approx", ball_to_json(c.approx, digits)}};
    if (c.conjugate_approx) out["conjugate"] = ball_to_json(*c.conjugate_approx, digits);
    return out;
}

json exact_tau_to_json(const ExactTau& t, size_t digits) {
    return json{{"quadratic", {t.A, t.B, t.C}},
                {"value", ball_to_json(t.value(256), digits)},
                {"disc", t.disc()},
                {"ring", t.ring_label()}};
}

json isogeny_step_to_json(const IsogenyStep& s, size_t digits) {
    json cands = json::array();
    auto names = isogeny_target_names(s.degree);
    for (const auto& c : s.candidates) {
        json jc{{"branch", c.branch},
                {"lambda_prime", ball_to_json(c.lambda_prime, digits)},
                {"j", ball_to_json(c.j, digits)}};
        jc["matched_target"] =
            c.matched_target >= 0 ? json(names[c.matched_target]) : json(nullptr);
        cands.push_back(std::move(jc));
    }
    json targets = json::array();
    for (size_t i = 0; i < s.targets.size(); ++i) {
        json t = exact_tau_to_json(s.targets[i], digits);
        t["name"] = names[i];
        targets.push_back(std::move(t));
    }
    return json{{"degree", s.degree},
                {"source_lambda", ball_to_json(s.source_lambda, digits)},
                {"source_j", ball_to_json(s.source_j, digits)},
                {"source_tau", exact_tau_to_json(s.source_tau, digits)},
                {"candidates", std::move(cands)},
                {"targets", std::move(targets)},
                {"chosen", s.chosen}};
}

json RunReport::to_json() const {
    return json{{"command", command},
                {"config", config},
                {"results", results},
                {"timing_seconds", timing_seconds},
                {"version", version}};
}

RunReport RunReport::from_json(const json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.config = j.at("config");
    r.results = j.at("results");
    r.timing_seconds = j.at("timing_seconds").get<double>();
    r.version = j.at("version").get<std::string>();
    return r;
}

namespace {
void render(const json& j, std::ostream& os, int indent) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_primitive()) {
                os << pad << it.key() << ": " << it.value().dump() << "\n";
            } else {
                os << pad << it.key() << ":\n";
                render(it.value(), os, indent + 2);
            }
        }
    } else if (j.is_array()) {
        int idx = 0;
        for (const auto& el : j) {
            if (el.is_primitive()) {
                os << pad << "- " << el.dump() << "\n";
            } else {
                os << pad << "- [" << idx << "]\n";
                render(el, os, indent + 2);
            }
            ++idx;
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}
} // namespace

std::string RunReport::render_text() const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    os << "version: " << version << "\n";
    os << "config:\n";
    render(config, os, 2);
    os << "results:\n";
    render(results, os, 2);
    os << "timing_seconds: " << timing_seconds << "\n";
    return os.str();
}

} // namespace cmlj
