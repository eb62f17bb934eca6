#include <arrmorse/system.hpp>

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace arrmorse;

namespace {

std::vector<RatVec> rat_rows(const std::vector<std::vector<int>>& rows) {
    std::vector<RatVec> out;
    for (const auto& r : rows) {
        RatVec v;
        for (int x : r) v.emplace_back(x);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

TEST_CASE("critical system of the paper example") {
    CriticalSystem sys =
        build_critical_system(expand_product(rat_rows({{1, 0, 0}, {1, -1, 0}, {1, 1, -1}})));
    CHECK(sys.degrees == std::vector<int>{3, 2, 2});
    CHECK(bezout_number(sys) == 12);
    CHECK(sys.level == 1);
    CHECK(sys.nvars == 3);
    // first equation carries the level constant
    CHECK(sys.equations[0].terms().at({0, 0, 0}) == Rat(-1));
    // the others are the partials in the non-distinguished variables
    CHECK(sys.equations[2].terms().count({1, 1, 0}) == 1); // -2xy term of dQ/dy
}

TEST_CASE("stage-two system") {
    CriticalSystem sys = build_critical_system(expand_product(rat_rows({{1, 0}, {1, -1}, {1, 1}})));
    CHECK(sys.degrees == std::vector<int>{3, 2});
    CHECK(bezout_number(sys) == 6);
}

TEST_CASE("bezout number for larger systems") {
    std::mt19937_64 rng(1123);
    Arrangement arr = testutil::random_arrangement(rng, 4, 5, 2);
    CriticalSystem sys = build_critical_system(expand_product(arr));
    CHECK(bezout_number(sys) == 5 * 4 * 4 * 4);
    Arrangement a34 = testutil::random_arrangement(rng, 3, 4, 2);
    CHECK(bezout_number(build_critical_system(expand_product(a34))) == 36);
}

TEST_CASE("normalization scale becomes the level") {
    // x, x+y, x-y+z/10 clears to (10,-10,1) with scale 10
    CriticalSystem sys = build_critical_system(
        expand_product(rat_rows({{1, 0, 0}, {1, 1, 0}, {1, -1, 0}})
                       ));
    CHECK(sys.level == 1);
    std::vector<RatVec> fam = {{Rat(1), Rat(0), Rat(0)},
                               {Rat(1), Rat(1), Rat(0)},
                               {Rat(1), Rat(-1), Rat(1, 10)}};
    CriticalSystem scaled = build_critical_system(expand_product(fam));
    CHECK(scaled.level == 10);
    CHECK(scaled.equations[0].terms().at({0, 0, 0}) == Rat(-10));
}

TEST_CASE("homogenization") {
    CriticalSystem sys =
        build_critical_system(expand_product(rat_rows({{1, 0, 0}, {1, -1, 0}, {1, 1, -1}})));
    ProjectiveSystem proj = homogenize(sys);
    REQUIRE(proj.equations.size() == 3);
    for (std::size_t i = 0; i < proj.equations.size(); ++i) {
        CHECK(proj.equations[i].nvars() == 4);
        CHECK(proj.equations[i].is_homogeneous(proj.degrees[i]));
    }
    // Q - w^3: the pure-w term has coefficient -level
    CHECK(proj.equations[0].terms().at({0, 0, 0, 3}) == Rat(-1));
    // setting w = 1 recovers the affine system
    CriticalSystem back = dehomogenize(proj, sys.level, sys.n_forms);
    CHECK(back.equations == sys.equations);
    CHECK(back.degrees == sys.degrees);
}

TEST_CASE("a one-variable product is rejected") {
    CHECK_THROWS_AS(build_critical_system(expand_product(rat_rows({{2}}))), input_error);
}
