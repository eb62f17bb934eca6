#include <arrmorse/frame.hpp>

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace arrmorse;
using testutil::make_arrangement;

namespace {

const Arrangement kPaper = make_arrangement({{1, 0, 0}, {1, -1, 0}, {1, 1, -1}});
const Arrangement kBoolean = make_arrangement({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

RatVec rv(std::initializer_list<int> xs) {
    RatVec v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("genericity of linear forms") {
    CHECK(is_generic(rv({0, 0, 1}), kPaper));            // z misses every line of flats
    CHECK_FALSE(is_generic(rv({0, 0, 1}), kBoolean));    // the y-axis lies in {z=0}
    CHECK(is_generic(rv({1, 2, 5}), kBoolean));
    CHECK_THROWS_AS(is_generic(rv({0, 0, 0}), kPaper), input_error);
}

TEST_CASE("genericity is scale invariant") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        Arrangement arr = testutil::random_arrangement(rng, 3, 4, 3);
        RatVec L = rv({static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3, 1});
        Rat c(static_cast<int>(rng() % 5) + 1, 3);
        RatVec scaled;
        for (const auto& x : L) scaled.push_back(c * x);
        CHECK(is_generic(L, arr) == is_generic(scaled, arr));
    }
}

TEST_CASE("stage restriction composes with the frame and truncates") {
    IntMat id = identity_matrix(3);
    Arrangement stage2 = restrict_stage(kPaper, id, 2);
    CHECK(stage2.dim == 2);
    CHECK(stage2.rows() == RatMat{rv({1, 0}), rv({1, -1}), rv({1, 1})});
    // frame columns mix coordinates: z = U z' with U acting on the right
    IntMat u = identity_matrix(3);
    u[2][0] = 1; // z_1' also feeds the old z
    Arrangement mixed = restrict_stage(kPaper, u, 2);
    CHECK(mixed.rows() == RatMat{rv({1, 0}), rv({1, -1}), rv({0, 1})});
}

TEST_CASE("restriction rejects collapsing stages") {
    // xyz truncated to two coordinates turns z into the zero form
    CHECK_THROWS_AS(restrict_stage(kBoolean, identity_matrix(3), 2), frame_error);
    // proportional images
    Arrangement arr = make_arrangement({{1, 0, 1}, {1, 0, -1}, {0, 1, 0}});
    CHECK_THROWS_AS(restrict_stage(arr, identity_matrix(3), 2), frame_error);
    CHECK_THROWS_AS(restrict_stage(kPaper, identity_matrix(3), 5), input_error);
}

TEST_CASE("identity frame is accepted for the paper example") {
    IntMat u = choose_frame(kPaper, 7);
    CHECK(u == identity_matrix(3));
}

TEST_CASE("boolean arrangement forces a re-randomized frame") {
    IntMat u = choose_frame(kBoolean, 1);
    CHECK(u != identity_matrix(3));
    Int det = determinant(u);
    CHECK((det == 1 || det == -1));
    // accepted frame is stage-wise generic
    for (int k = 3; k >= 2; --k) {
        Arrangement stage = restrict_stage(kBoolean, u, k);
        RatVec zk(k, Rat(0));
        zk[k - 1] = 1;
        CHECK(is_generic(zk, stage));
    }
}

TEST_CASE("frame choice is deterministic in the seed") {
    for (long seed : {0L, 3L, 19L}) {
        IntMat a = choose_frame(kBoolean, seed);
        IntMat b = choose_frame(kBoolean, seed);
        CHECK(a == b);
    }
}

TEST_CASE("frame search reports the failing stage when exhausted") {
    try {
        choose_frame(kBoolean, 5, /*retry_budget=*/1); // identity only, which fails
        FAIL("expected frame_error");
    } catch (const frame_error& e) {
        CHECK(e.stage >= 2);
    }
}
