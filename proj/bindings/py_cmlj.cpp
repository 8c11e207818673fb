#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmlj/isogeny.hpp"
#include "cmlj/modular.hpp"
#include "cmlj/report.hpp"
#include "cmlj/solver.hpp"

namespace py = pybind11;
using namespace cmlj;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& el : j) out.append(json_to_py(el));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default:
            return py::none();
    }
}

CBall ball_from(const std::string& re, const std::string& im, long prec) {
    return CBall::from_decimal(re, im, static_cast<mpfr_prec_t>(prec));
}

} // namespace

PYBIND11_MODULE(_cmlj, m) {
    m.doc() = "Legendre parameters and j-invariants of CM elliptic curves";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "CmljError");

    m.def(
        "j_of_lambda",
        [](const std::string& re, const std::string& im, long prec) {
            return json_to_py(ball_to_json(j_of_lambda(ball_from(re, im, prec)),
                                           digits_for(prec)));
        },
        py::arg("re"), py::arg("im") = "0", py::arg("prec") = 256);

    m.def(
        "j_q_expansion",
        [](const std::string& re, const std::string& im, int n_terms, bool even_only,
           long prec) {
            CBall tau = ball_from(re, im, prec);
            return json_to_py(
                ball_to_json(j_q_expansion(tau, n_terms, even_only), digits_for(prec)));
        },
        py::arg("re"), py::arg("im"), py::arg("n_terms") = 6, py::arg("even_only") = false,
        py::arg("prec") = 256);

    m.def(
        "j_theta_oracle",
        [](const std::string& re, const std::string& im, long prec) {
            ThetaJ th = j_theta_oracle(ball_from(re, im, prec + 64), prec);
            py::dict out;
            out["lambda"] = json_to_py(ball_to_json(th.lambda_tau, digits_for(prec)));
            out["j"] = json_to_py(ball_to_json(th.j_tau, digits_for(prec)));
            return out;
        },
        py::arg("re"), py::arg("im"), py::arg("prec") = 256);

    m.def(
        "enumerate",
        [](long long D, bool allow_square) {
            py::list out;
            for (const auto& orb : enumerate_orbits(D, allow_square))
                out.append(json_to_py(orbit_to_json(orb, 40)));
            return out;
        },
        py::arg("D"), py::arg("allow_square") = false);

    m.def(
        "solve",
        [](long long D, int variant, int starts, unsigned long long seed, long prec) {
            SolverConfig cfg;
            cfg.starts = starts;
            cfg.seed = seed;
            cfg.precision = static_cast<mpfr_prec_t>(prec);
            json out = json::array();
            PolySystem sys = build_system(D, static_cast<SystemVariant>(variant));
            for (const auto& g : solve(sys, cfg))
                out.push_back(group_to_json(g, digits_for(prec)));
            return json_to_py(out);
        },
        py::arg("D"), py::arg("variant"), py::arg("starts") = 0, py::arg("seed") = 0,
        py::arg("prec") = 256);

    m.def(
        "j2_candidates",
        [](const std::string& re, const std::string& im, long prec) {
            py::list out;
            for (const auto& c : j2_candidates(ball_from(re, im, prec))) {
                py::dict d;
                d["branch"] = c.branch;
                d["j"] = json_to_py(ball_to_json(c.j, digits_for(prec)));
                out.append(d);
            }
            return out;
        },
        py::arg("re"), py::arg("im") = "0", py::arg("prec") = 256);

    m.def(
        "j3_candidates",
        [](const std::string& re, const std::string& im, long prec) {
            py::list out;
            for (const auto& c : j3_candidates(ball_from(re, im, prec))) {
                py::dict d;
                d["lambda_prime"] = json_to_py(ball_to_json(c.lambda_prime, digits_for(prec)));
                d["j"] = json_to_py(ball_to_json(c.j, digits_for(prec)));
                out.append(d);
            }
            return out;
        },
        py::arg("re"), py::arg("im") = "0", py::arg("prec") = 256);

    m.def(
        "recognize_quadratic",
        [](const std::string& re, const std::string& im, long prec,
           long long height_bound) -> py::object {
            auto cand = recognize_quadratic(ball_from(re, im, prec), height_bound);
            if (!cand) return py::none();
            return json_to_py(candidate_to_json(*cand, digits_for(prec)));
        },
        py::arg("re"), py::arg("im") = "0", py::arg("prec") = 256,
        py::arg("height_bound") = 1000000000000000000LL);
}
