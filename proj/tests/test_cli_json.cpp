#include "doctest.h"

#include "cmlj/report.hpp"

using namespace cmlj;

TEST_CASE("ball JSON round-trips at the decimal string level") {
    CBall b = CBall::from_decimal("-3374.999999999123", "0.25", 256);
    b.add_error_pow2(-120);
    json j1 = ball_to_json(b, 40);
    CBall back = ball_from_json(j1, 256);
    json j2 = ball_to_json(back, 40);
    CHECK(j1.at("re") == j2.at("re"));
    CHECK(j1.at("im") == j2.at("im"));
    // radius may only grow across a round trip
    CHECK(back.radius().to_double() >= b.radius().to_double() * 0.99);
}

TEST_CASE("RunReport serializes losslessly") {
    RunReport rep;
    rep.command = "enumerate";
    rep.config = json{{"D", 3}, {"precision", 256}};
    rep.results = json{{"count", 4}, {"values", {"a", "b"}}};
    rep.timing_seconds = 1.25;
    json j = rep.to_json();
    RunReport back = RunReport::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.command == "enumerate");
    CHECK(back.version == kVersion);
}

TEST_CASE("text rendering carries the same numeric content") {
    RunReport rep;
    rep.command = "jtau";
    rep.config = json{{"qterms", 4}};
    rep.results = json{{"series", {{"re", "7999.997704086"}, {"im", "0"}, {"rad", "1e-30"}}}};
    std::string text = rep.render_text();
    CHECK(text.find("7999.997704086") != std::string::npos);
    CHECK(text.find("qterms") != std::string::npos);
}

TEST_CASE("taurep and orbit JSON carry the schema fields") {
    TauRep t{2, 0, 0, 1};
    json j = taurep_to_json(t, 30);
    CHECK(j.at("D") == 2);
    CHECK(j.at("form") == json({1, 0, 2}));
    CHECK(j.at("tau").contains("re"));
    CHECK(j.at("tau").contains("im"));
    CHECK(j.at("tau").contains("rad"));

    auto orbits = enumerate_orbits(2, false);
    json jo = orbit_to_json(orbits[0], 30);
    CHECK(jo.contains("order"));
    CHECK(jo.contains("aliases"));
    CHECK(jo.at("order").contains("ring"));
}
