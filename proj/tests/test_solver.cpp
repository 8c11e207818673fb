#include "doctest.h"

#include "cmlj/modular.hpp"
#include "cmlj/solver.hpp"

using namespace cmlj;

namespace {
// fewer starts than the default keeps unit tests quick; the acceptance suite
// runs the full configuration
SolverConfig quick_cfg(int starts) {
    SolverConfig cfg;
    cfg.starts = starts;
    cfg.seed = 0;
    return cfg;
}
bool has_j(const std::vector<SolutionGroup>& gs, long re) {
    for (const auto& g : gs)
        if (g.rep.j_value.contains_si_pair(re, 0)) return true;
    return false;
}
} // namespace

TEST_CASE("solve D=3 S1: lambda = e^{+-i pi/3}, j = 0") {
    auto sys = build_system(3, SystemVariant::S1);
    auto groups = solve(sys, quick_cfg(1500));
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].rep.j_value.contains_si_pair(0, 0));
    CHECK(groups[0].members.size() == 2);
    // lambda midpoints are the primitive sixth roots of unity
    for (const auto& m : groups[0].members) {
        CHECK(std::abs(m.lambda.mid_re_d() - 0.5) < 1e-12);
        CHECK(std::abs(std::abs(m.lambda.mid_im_d()) - std::sqrt(3.0) / 2) < 1e-12);
    }
    // residual certificate
    for (const auto& m : groups[0].members) {
        auto res = residual(sys, m.assignment);
        for (const auto& r : res) CHECK(r.contains_zero());
    }
}

TEST_CASE("solve D=3 S2: j in {8000, 54000}, lambda sets as in the worked example") {
    auto sys = build_system(3, SystemVariant::S2);
    auto groups = solve(sys, quick_cfg(3000));
    REQUIRE(groups.size() == 2);
    CHECK(has_j(groups, 8000));
    CHECK(has_j(groups, 54000));
    for (const auto& g : groups) {
        if (g.rep.j_value.contains_si_pair(8000, 0)) {
            // lambda = 3 +- 2 sqrt2 up to S3; four records (t = +-i twice)
            CHECK(g.members.size() == 4);
        }
    }
}

TEST_CASE("solve D=3 S3: sextic roots give j = -32768") {
    auto sys = build_system(3, SystemVariant::S3);
    auto groups = solve(sys, quick_cfg(4000));
    CHECK(has_j(groups, -32768));
    CHECK(has_j(groups, 0));
    for (const auto& g : groups)
        if (g.rep.j_value.contains_si_pair(-32768, 0))
            CHECK(g.members.size() == 6);
}

TEST_CASE("every accepted record passes square condition and census by construction") {
    auto sys = build_system(3, SystemVariant::S2);
    auto groups = solve(sys, quick_cfg(1500));
    for (const auto& g : groups)
        for (const auto& m : g.members) {
            HFunction h = assemble_h(sys, m.assignment);
            CHECK(verify_square_condition(h));
            CHECK(census_matches(ramification_census(h), 3));
        }
}

TEST_CASE("S3 closure at the j level") {
    auto sys = build_system(3, SystemVariant::S2);
    auto groups = solve(sys, quick_cfg(1500));
    for (const auto& g : groups) {
        CBall one = CBall::from_si(1, g.rep.lambda.precision());
        CBall j1 = j_of_lambda(one - g.rep.lambda);
        CBall j2 = j_of_lambda(g.rep.lambda.inv());
        CHECK(!g.rep.j_value.certifiably_distinct(j1));
        CHECK(!g.rep.j_value.certifiably_distinct(j2));
    }
}

TEST_CASE("determinism: two runs with the same seed serialize identically") {
    auto sys = build_system(3, SystemVariant::S1);
    auto g1 = solve(sys, quick_cfg(800));
    auto g2 = solve(sys, quick_cfg(800));
    REQUIRE(g1.size() == g2.size());
    for (size_t i = 0; i < g1.size(); ++i) {
        REQUIRE(g1[i].members.size() == g2[i].members.size());
        for (size_t m = 0; m < g1[i].members.size(); ++m) {
            const auto& a = g1[i].members[m];
            const auto& b = g2[i].members[m];
            for (size_t c = 0; c < a.assignment.size(); ++c) {
                CHECK(a.assignment[c].re_string(40) == b.assignment[c].re_string(40));
                CHECK(a.assignment[c].im_string(40) == b.assignment[c].im_string(40));
            }
        }
    }
}

TEST_CASE("dedup merges near-identical records and groups reciprocal lambdas") {
    auto sys = build_system(3, SystemVariant::S2);
    auto groups = solve(sys, quick_cfg(2000));
    std::vector<SolutionRecord> recs;
    for (const auto& g : groups)
        for (const auto& m : g.members) {
            recs.push_back(m);
            recs.push_back(m); // duplicate on purpose
        }
    auto re_grouped = dedup(recs, -40);
    size_t total = 0;
    for (const auto& g : re_grouped) total += g.members.size();
    size_t orig = 0;
    for (const auto& g : groups) orig += g.members.size();
    CHECK(total == orig);
    CHECK(dedup({}, -40).empty());
}

TEST_CASE("refine: higher precision shrinks residual; garbage diverges") {
    auto sys = build_system(3, SystemVariant::S1);
    auto groups = solve(sys, quick_cfg(800));
    REQUIRE(!groups.empty());
    SolutionRecord rec = groups[0].rep;
    SolutionRecord fine = refine(sys, rec, 512);
    CHECK(fine.residual_norm.radius() < UReal::pow2(-400));
    // midpoints agree with the coarse record
    CHECK(!fine.lambda.certifiably_distinct(rec.lambda));

    SolutionRecord junk = rec;
    junk.assignment[0] = CBall::from_doubles(0.123, 4.56, 256);
    junk.assignment[2] = CBall::from_doubles(-3.21, 0.77, 256);
    CHECK_THROWS_AS(refine(sys, junk, 256), DivergedDuringRefine);
}

TEST_CASE("NoSolutionsFound surfaces when starts are hopeless") {
    auto sys = build_system(3, SystemVariant::S1);
    SolverConfig cfg = quick_cfg(1);
    cfg.max_iters = 1;
    CHECK_THROWS_AS(solve(sys, cfg), NoSolutionsFound);
}
