#include <arrmorse/arrangement.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace arrmorse;

namespace {

RatVec rv(std::initializer_list<int> xs) {
    RatVec v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("parses the three-plane example") {
    Arrangement arr = parse_arrangement("vars: x y z\nform: x\nform: x - y\nform: x + y - z\n");
    REQUIRE(arr.dim == 3);
    REQUIRE(arr.size() == 3);
    CHECK(arr.rows() == RatMat{rv({1, 0, 0}), rv({1, -1, 0}), rv({1, 1, -1})});
    CHECK(arr.var_names == std::vector<std::string>{"x", "y", "z"});
    CHECK_FALSE(arr.is_parametric());
    CHECK(arr.essential());
}

TEST_CASE("accepts the U+2212 minus sign") {
    Arrangement arr = parse_arrangement("vars: x y\nform: x \xE2\x88\x92 y\n");
    CHECK(arr.rows() == RatMat{rv({1, -1})});
}

TEST_CASE("rational coefficients, * separators and parameter powers") {
    Arrangement arr = parse_arrangement(
        "# comment\n"
        "vars: x y z\n"
        "param: t\n"
        "form: 3/2 x - t^2*y + 5 t z\n"
        "form: x\n");
    const LinearForm& f = arr.forms[0];
    CHECK(f.coeffs[0].constant_value() == Rat(3, 2));
    CHECK(f.coeffs[1].degree() == 2);
    CHECK(f.coeffs[1].coefficients() == std::vector<Rat>{Rat(0), Rat(0), Rat(-1)});
    CHECK(f.coeffs[2].coefficients() == std::vector<Rat>{Rat(0), Rat(5)});
    RatVec at2 = f.evaluate(Rat(2));
    CHECK(at2 == RatVec{Rat(3, 2), Rat(-4), Rat(10)});
}

TEST_CASE("parameter coefficient of z is the degree-1 polynomial t") {
    Arrangement arr = parse_arrangement("vars: x y z\nparam: t\nform: x - y + t z\n");
    const ParamPoly& cz = arr.forms[0].coeffs[2];
    CHECK(cz.degree() == 1);
    CHECK(cz.coefficients() == std::vector<Rat>{Rat(0), Rat(1)});
}

TEST_CASE("proportional forms are rejected") {
    CHECK_THROWS_AS(parse_arrangement("vars: x y\nform: x\nform: 2x\n"), parse_error);
    CHECK_THROWS_AS(parse_arrangement("vars: x y\nform: x - y\nform: -x + y\n"), parse_error);
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_arrangement("vars: x y\nform: x + 3\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("variable") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_arrangement("vars: x y\nform: x + w\n"), parse_error);   // unknown var
    CHECK_THROWS_AS(parse_arrangement("vars: x y\nform: x x\n"), parse_error);     // two variables
    CHECK_THROWS_AS(parse_arrangement("vars: x y\nform: \n"), parse_error);        // empty expr
    CHECK_THROWS_AS(parse_arrangement("vars: x y\nform: 1/0 x\n"), parse_error);   // zero denominator
    CHECK_THROWS_AS(parse_arrangement("vars: x y\nform: x - x\n"), parse_error);   // zero form
    CHECK_THROWS_AS(parse_arrangement("form: x\nvars: x y\n"), parse_error);       // form before vars
    CHECK_THROWS_AS(parse_arrangement("vars: x y\n"), parse_error);                // no forms
    CHECK_THROWS_AS(parse_arrangement("vars: x x\nform: x\n"), parse_error);       // duplicate var
}

TEST_CASE("at most one parameter") {
    CHECK_THROWS_AS(parse_arrangement("vars: x\nparam: t\nparam: s\nform: t x\n"), parse_error);
    CHECK_THROWS_AS(parse_arrangement("vars: x t\nparam: t\nform: x\n"), parse_error);
    CHECK_THROWS_AS(parse_arrangement("vars: x\nparam: t\nform: t^5 x\n"), parse_error);
}

TEST_CASE("family evaluation catches degeneration") {
    Arrangement arr = parse_arrangement("vars: x y\nparam: t\nform: x\nform: t y\n");
    Arrangement at1 = arr.evaluate_at(Rat(1));
    CHECK(at1.rows() == RatMat{rv({1, 0}), rv({0, 1})});
    CHECK_THROWS_AS(arr.evaluate_at(Rat(0)), input_error); // second form vanishes
    Arrangement prop = parse_arrangement("vars: x y\nparam: t\nform: x + y\nform: x + t y\n");
    CHECK_THROWS_AS(prop.evaluate_at(Rat(1)), input_error); // forms collide
    CHECK(prop.evaluate_at(Rat(2)).size() == 2);
}

TEST_CASE("parametric proportionality is deferred to evaluation") {
    // proportional at t = 1 only; parse must accept the family
    Arrangement arr = parse_arrangement("vars: x y\nparam: t\nform: x + t y\nform: x + y\n");
    CHECK(arr.size() == 2);
}

TEST_CASE("non-essential input is accepted and flagged") {
    Arrangement arr = parse_arrangement("vars: x y z\nform: x\nform: x + y\nform: x - y\n");
    CHECK_FALSE(arr.essential());
}

TEST_CASE("form rendering") {
    Arrangement arr = parse_arrangement("vars: x y z\nform: x - y + 1/3 z\n");
    CHECK(format_form(arr.rows()[0], arr.var_names) == "x - y + 1/3*z");
}
