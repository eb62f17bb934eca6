#include <arrmorse/poincare.hpp>

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace arrmorse;
using testutil::make_arrangement;

namespace {

std::vector<Int> ints(std::initializer_list<int> xs) {
    std::vector<Int> v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("paper example Poincare polynomials") {
    PoincareData pd =
        poincare(build_lattice(make_arrangement({{1, 0, 0}, {1, -1, 0}, {1, 1, -1}})));
    CHECK(pd.p_m == IntPoly({1, 3, 3, 1}));    // (1+t)^3
    CHECK(pd.p_mstar == IntPoly({1, 2, 1}));   // (1+t)^2
    CHECK(pd.betti_m == ints({1, 3, 3, 1}));
    CHECK(pd.betti_mstar == ints({1, 2, 1}));
}

TEST_CASE("central 2-arrangement with four lines") {
    PoincareData pd = poincare(build_lattice(make_arrangement({{1, 0}, {0, 1}, {1, 1}, {1, -1}})));
    CHECK(pd.p_m == IntPoly({1, 4, 3})); // (1+t)(1+3t)
    CHECK(pd.betti_m == ints({1, 4, 3}));
    CHECK(pd.betti_mstar == ints({1, 3}));
}

TEST_CASE("non-essential triple through the z-axis") {
    PoincareData pd = poincare(build_lattice(make_arrangement({{1, 0, 0}, {1, 1, 0}, {1, -1, 0}})));
    CHECK(pd.chi == IntPoly({0, 2, -3, 1}));
    CHECK(pd.p_m == IntPoly({1, 3, 2})); // (1+t)(1+2t)
    CHECK(pd.betti_mstar == ints({1, 2, 0}));
}

TEST_CASE("cell count predictions") {
    SECTION("paper example") {
        PoincareData pd =
            poincare(build_lattice(make_arrangement({{1, 0, 0}, {1, -1, 0}, {1, 1, -1}})));
        CellCounts cc = predict_cells(pd, 3);
        CHECK(cc.c_f == ints({3, 6, 3}));
        CHECK(cc.c_mstar == ints({1, 2, 1}));
        CHECK(cc.c_m == ints({1, 3, 3, 1}));
        CHECK(cc.euler_f == 0);
        CHECK(cc.euler_mstar == 0);
    }
    SECTION("generic four planes") {
        PoincareData pd = poincare(
            build_lattice(make_arrangement({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})));
        CellCounts cc = predict_cells(pd, 4);
        CHECK(cc.c_f == ints({4, 12, 12}));
        CHECK(cc.euler_f == 4);
    }
    SECTION("degenerate triple") {
        PoincareData pd =
            poincare(build_lattice(make_arrangement({{1, 0, 0}, {1, 1, 0}, {1, -1, 0}})));
        CellCounts cc = predict_cells(pd, 3);
        CHECK(cc.c_f == ints({3, 6, 0}));
        CHECK(cc.euler_f == -3);
        CHECK(cc.euler_mstar == -1);
    }
}

TEST_CASE("(1+t) divides P(M) for random central arrangements") {
    std::mt19937_64 rng(555001);
    for (int trial = 0; trial < 60; ++trial) {
        int dim = 2 + static_cast<int>(rng() % 3);
        int n = 2 + static_cast<int>(rng() % 5);
        Arrangement arr = testutil::random_arrangement(rng, dim, n, 3);
        PoincareData pd;
        REQUIRE_NOTHROW(pd = poincare(build_lattice(arr))); // inexact division would throw
        // Euler identity for the predicted counts
        CellCounts cc = predict_cells(pd, arr.size());
        CHECK(cc.euler_f == Int(arr.size()) * pd.p_mstar.evaluate(Int(-1)));
        // entrywise c_F = n * betti(M*)
        for (std::size_t p = 0; p < cc.c_f.size(); ++p)
            CHECK(cc.c_f[p] == Int(arr.size()) * pd.betti_mstar[p]);
    }
}

TEST_CASE("exact division failure is an internal error") {
    IntPoly not_divisible({1, 1, 1}); // 1 + t + t^2
    CHECK_THROWS_AS(not_divisible.divide_by_one_plus_t(), internal_error);
    CHECK(IntPoly({1, 2, 1}).divide_by_one_plus_t() == IntPoly({1, 1}));
}
