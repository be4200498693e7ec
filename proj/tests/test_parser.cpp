#include <doctest.h>

#include "ddsurf/parser.hpp"

#include "oracles.hpp"

using namespace ddsurf;

namespace {
const Field kQ = Field::rationals();
const VarSet kXZ{Var::X, Var::Z};
const VarSet kXYZ{Var::X, Var::Y, Var::Z};
}  // namespace

TEST_CASE("literal parses") {
    MultiPoly p = parse_poly("Z^2 - 1", kQ, kXZ);
    CHECK(p.coeff(unit_exp(Var::Z, 2)).is_one());
    CHECK(p.coeff(ExpVec{}) == FieldScalar::from_long(kQ, -1));
    CHECK(p.terms().size() == 2);

    MultiPoly q = parse_poly("Y^2 + Z", kQ, kXYZ);
    CHECK(q.degree_in(Var::Y) == 2);
    CHECK(q.coeff(unit_exp(Var::Z)).is_one());
}

TEST_CASE("distributivity and rational coefficients") {
    MultiPoly p = parse_poly("X^2*(Y + 1/2)", kQ, kXYZ);
    ExpVec x2y = unit_exp(Var::X, 2);
    x2y[var_index(Var::Y)] = 1;
    CHECK(p.coeff(x2y).is_one());
    CHECK(p.coeff(unit_exp(Var::X, 2)) == FieldScalar::from_ratio(kQ, 1, 2));
    CHECK(p.terms().size() == 2);
}

TEST_CASE("grammar rejections carry positions") {
    CHECK_THROWS_AS(parse_poly("2X", kQ, kXZ), ParseError);          // juxtaposition
    CHECK_THROWS_AS(parse_poly("Z/2", kQ, kXZ), ParseError);         // '/' only in literals
    CHECK_THROWS_AS(parse_poly("Q + 1", kQ, kXZ), ParseError);       // unknown symbol
    CHECK_THROWS_AS(parse_poly("Y", kQ, kXZ), ParseError);           // variable not allowed
    CHECK_THROWS_AS(parse_poly("Z^-1", kQ, kXZ), ParseError);        // negative exponent
    CHECK_THROWS_AS(parse_poly("(Z", kQ, kXZ), ParseError);          // unbalanced
    CHECK_THROWS_AS(parse_poly("", kQ, kXZ), ParseError);
    try {
        parse_poly("Z + Q", kQ, kXZ);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("laurent grammar allows negative exponents only on X") {
    LaurentPoly p = parse_laurent("X^-2*Z + 3", kQ, kXZ);
    CHECK(p.ord_x() == -2);
    CHECK_THROWS_AS(parse_laurent("Z^-2", kQ, kXZ), ParseError);
    CHECK_THROWS_AS(parse_laurent("(X + 1)^-2", kQ, kXZ), ParseError);
}

TEST_CASE("printing uses descending lex order and survives round trips") {
    CHECK(to_string(parse_poly("-1 + Z^2", kQ, kXZ)) == "Z^2 - 1");
    CHECK(to_string(parse_poly("Z + Y^2", kQ, kXYZ)) == "Y^2 + Z");
    CHECK(to_string(MultiPoly(kQ)) == "0");
    CHECK(to_string(parse_poly("-1/4*Y", kQ, kXYZ)) == "-1/4*Y");

    oracle::Rng rng(7);
    std::vector<Var> vars{Var::X, Var::Y, Var::Z, Var::T, Var::W, Var::U, Var::V};
    for (const Field& f : {Field::rationals(), Field::prime(7)}) {
        for (int i = 0; i < 200; ++i) {
            MultiPoly p = oracle::random_poly(rng, f, vars);
            CHECK(parse_poly(to_string(p), f, VarSet::all()) == p);
        }
    }
}

TEST_CASE("laurent printing round trip") {
    oracle::Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        MultiPoly p = oracle::random_poly(rng, kQ, {Var::X, Var::Z, Var::W});
        LaurentPoly l = LaurentPoly::from_multi(p).mul_xpow(rng.pick(-5, 0));
        if (l.is_zero()) continue;
        CHECK(parse_laurent(to_string(l), kQ, VarSet::all()) == l);
    }
}

TEST_CASE("lowercase element aliases and witness symbols") {
    CHECK(parse_poly("x*y - z", kQ, VarSet::all()) == parse_poly("X*Y - Z", kQ, VarSet::all()));
    MultiPoly w = parse_poly("x*V - 1/4*G*H", kQ, VarSet::all(), NameStyle::Witness);
    ExpVec xv = unit_exp(Var::X);
    xv[var_index(Var::W)] = 1;  // V names the W slot
    CHECK(w.coeff(xv).is_one());
    ExpVec gh = unit_exp(Var::Y);  // G names the Y slot
    gh[var_index(Var::T)] = 1;     // H names the T slot
    CHECK(w.coeff(gh) == FieldScalar::from_ratio(kQ, -1, 4));
    CHECK(to_string(w, NameStyle::Witness) == "x*V - 1/4*G*H");
    CHECK_THROWS_AS(parse_poly("y", kQ, VarSet::all(), NameStyle::Witness), ParseError);
}

TEST_CASE("prime field coefficients print as residues") {
    Field f2 = Field::prime(2);
    MultiPoly p = parse_poly("Z + 1", f2, kXZ);
    MultiPoly sq = p * p;
    CHECK(to_string(sq) == "Z^2 + 1");
}
