#include <doctest.h>

#include "ddsurf/surface.hpp"

#include "oracles.hpp"

using namespace ddsurf;

namespace {
const Field kQ = Field::rationals();

MultiPoly P(const std::string& s, const Field& f = kQ) { return parse_poly(s, f, VarSet::all()); }

SpecPtr flagship(const Field& f = kQ) {
    return surface_new(f, 1, 2, P("Z^2 - 1", f), P("Y^2 + Z", f));
}

SurfaceElement el(const SpecPtr& sp, const std::string& s) { return SurfaceElement::parse(sp, s); }
}  // namespace

TEST_CASE("surface validation computes degrees and flags") {
    SpecPtr sp = flagship();
    CHECK(sp->r == 2);
    CHECK(sp->s == 2);
    CHECK(sp->is_double);
    CHECK(sp->mlc);

    SpecPtr danielewski = surface_new(kQ, 1, 1, P("Z"), P("Y"));
    CHECK(danielewski->r == 1);
    CHECK(danielewski->s == 1);
    CHECK_FALSE(danielewski->is_double);
    CHECK_FALSE(danielewski->mlc);

    SpecPtr big = surface_new(kQ, 2, 3, P("Z^2 + X"), P("Y^3 + X*Z*Y + Z"));
    CHECK(big->r == 2);
    CHECK(big->s == 3);
    CHECK(big->is_double);
}

TEST_CASE("mlc flag covers the three parameter ranges") {
    CHECK(surface_new(kQ, 1, 1, P("Z^2 - 1"), P("Y"))->mlc);            // r>=2, s=1
    CHECK(surface_new(kQ, 1, 2, P("Z"), P("Y^2 + Z"))->mlc);            // r=1, s>=2, e>=2
    CHECK_FALSE(surface_new(kQ, 1, 1, P("Z"), P("Y^2 + Z"))->mlc);      // r=1, e=1
}

TEST_CASE("invalid specs are rejected with the violated invariant") {
    CHECK_THROWS_AS(surface_new(kQ, 0, 1, P("Z"), P("Y")), SpecError);
    CHECK_THROWS_AS(surface_new(kQ, 1, 1, P("2*Z^2 - 1"), P("Y")), SpecError);   // not monic
    CHECK_THROWS_AS(surface_new(kQ, 1, 1, P("X*Z^2 + Z"), P("Y")), SpecError);   // lead coeff X
    CHECK_THROWS_AS(surface_new(kQ, 1, 1, P("Z"), P("Y^2 + X*Y^2")), SpecError); // Q not monic
    CHECK_THROWS_AS(surface_new(kQ, 1, 1, P("X"), P("Y")), SpecError);           // r = 0
    CHECK_THROWS_AS(surface_new(kQ, 1, 1, P("Z"), P("X + Z")), SpecError);       // s = 0
    CHECK_THROWS_AS(surface_new(kQ, 1, 1, P("Z + T"), P("Y")), SpecError);       // bad support
}

TEST_CASE("the Laurent embedding sends generators to the expected images") {
    SpecPtr sp = flagship();
    LaurentPoly y_img = el(sp, "y").laurent();
    CHECK(y_img == LaurentPoly::from_multi(P("Z^2 - 1")).mul_xpow(-1));

    LaurentPoly t_img = el(sp, "t").laurent();
    LaurentPoly expect = LaurentPoly::from_multi(P("Z^4 - 2*Z^2 + 1")).mul_xpow(-4) +
                         LaurentPoly::from_multi(P("Z")).mul_xpow(-2);
    CHECK(t_img == expect);

    CHECK(el(sp, "x*y - (Z^2 - 1)").is_zero());      // defining relation
    CHECK(el(sp, "x^2*t - (y^2 + z)").is_zero());    // defining relation
}

TEST_CASE("equality is decided in the embedding") {
    SpecPtr sp = flagship();
    CHECK(el(sp, "x*y").equals(el(sp, "z^2 - 1")));
    CHECK(el(sp, "y^2 + z").equals(el(sp, "x^2*t")));
    CHECK_FALSE(el(sp, "y").equals(el(sp, "z")));

    SpecPtr other = surface_new(kQ, 1, 2, P("Z^2 + 1"), P("Y^2 + Z"));
    CHECK_THROWS_AS(el(sp, "y").equals(el(other, "y")), SpecError);
}

TEST_CASE("rewriting to the bounded form") {
    SpecPtr sp2 = surface_new(kQ, 2, 1, P("Z^2 + X"), P("Y"));
    CHECK(normalize(el(sp2, "x^3*y")).expr == P("X*Z^2 + X^2"));

    SpecPtr sp = flagship();
    CHECK(normalize(el(sp, "x^2*t")).expr == P("Y^2 + Z"));

    NormalForm nf = normalize(el(sp, "x^2*y*t"));
    CHECK(nf.expr == P("X*Z^2*T - X*T"));
    CHECK(nf.within_bounds());
    // stratum bookkeeping: the only nonzero family is b_{1,1}(z) = z^2 - 1
    const auto& st = nf.strata.at(ExpVec{});
    CHECK(st.f0.is_zero());
    CHECK(st.a.empty());
    CHECK(st.c.empty());
    CHECK(st.b.at({1, 1}) == P("Z^2 - 1"));
}

TEST_CASE("rewriting terminates within bounds and preserves the embedding") {
    for (const Field& f : {Field::rationals(), Field::prime(7)}) {
        SpecPtr sp = flagship(f);
        oracle::Rng rng(101);
        for (int i = 0; i < 500; ++i) {
            SurfaceElement a = oracle::random_element(rng, sp, /*with_w=*/i % 3 == 0);
            NormalForm nf = normalize(a);
            CHECK(nf.within_bounds());
            CHECK(nf.re_expand() == nf.expr);
            CHECK(SurfaceElement::make(sp, nf.expr).laurent() == a.laurent());
        }
    }
}

// The two rewrite rules are not confluent: y^3 + y*z and x*(z^2-1)*t are both
// rule-irreducible yet equal in B (multiply the second relation by y). The
// bounded form is therefore representative-dependent; equality always goes
// through the Laurent embedding.
TEST_CASE("bounded forms are not unique across representatives (known)") {
    SpecPtr sp = flagship();
    SurfaceElement left = el(sp, "y^3 + y*z");
    SurfaceElement right = el(sp, "x*z^2*t - x*t");
    CHECK(left.equals(right));
    NormalForm nl = normalize(left), nr = normalize(right);
    CHECK(nl.within_bounds());
    CHECK(nr.within_bounds());
    CHECK(nl.expr != nr.expr);
}

TEST_CASE("rewriting agrees across representatives differing by first-relation multiples") {
    SpecPtr sp = flagship();
    oracle::Rng rng(53);
    MultiPoly rel1 = P("X*Y - Z^2 + 1");
    for (int i = 0; i < 100; ++i) {
        SurfaceElement a = oracle::random_element(rng, sp);
        MultiPoly m = oracle::random_poly(rng, kQ, {Var::X, Var::Y, Var::Z, Var::T}, 2);
        SurfaceElement b = SurfaceElement::make(sp, a.expr() + m * rel1);
        CHECK(a.equals(b));
        CHECK(normalize(a).expr == normalize(b).expr);
    }
}

TEST_CASE("canonical image in the x = 0 fiber") {
    SpecPtr sp = flagship();
    oracle::Rng rng(59);
    for (int i = 0; i < 20; ++i) {
        SurfaceElement a = oracle::random_element(rng, sp, true);
        CHECK(reduce_mod_x(SurfaceElement::generator(sp, Var::X) * a).is_zero());
    }
    CHECK(reduce_mod_x(el(sp, "1 + y^2*z")).is_zero());
    CHECK(reduce_mod_x(el(sp, "z^2")) == P("1"));
    CHECK(reduce_mod_x(el(sp, "y")) == P("Y"));
}

TEST_CASE("exact division by x with explicit witnesses") {
    SpecPtr sp = flagship();
    SurfaceElement q = divide_exact_x(el(sp, "x^2*t"), 1);
    CHECK(q.equals(el(sp, "x*t")));

    SurfaceElement d = divide_exact_x(el(sp, "1 + y^2*z"), 1);
    CHECK(d.equals(el(sp, "-y + x*z*t")));
    CHECK(d.expr() == P("X*Z*T - Y"));  // the constructed representative

    CHECK_THROWS_AS(divide_exact_x(el(sp, "y"), 1), NotDivisibleError);
}

TEST_CASE("division by x^n inverts multiplication") {
    SpecPtr sp = flagship();
    oracle::Rng rng(61);
    SurfaceElement x = SurfaceElement::generator(sp, Var::X);
    for (int i = 0; i < 60; ++i) {
        SurfaceElement a = oracle::random_element(rng, sp, true);
        long n = rng.pick(1, 3);
        CHECK(divide_exact_x(x.pow(n) * a, n).equals(a));
    }
}

TEST_CASE("no zero divisors show up on random samples") {
    SpecPtr sp = flagship();
    oracle::Rng rng(67);
    MultiPoly rel1 = P("X*Y - Z^2 + 1");
    MultiPoly rel2 = P("X^2*T - Y^2 - Z");
    for (int i = 0; i < 60; ++i) {
        // Sprinkle in elements that are zero despite nonzero expressions.
        SurfaceElement a = rng.pick(0, 3) == 0
                               ? SurfaceElement::make(
                                     sp, oracle::random_poly(rng, kQ, {Var::X, Var::Y, Var::Z}, 1) * rel1)
                               : oracle::random_element(rng, sp);
        SurfaceElement b = rng.pick(0, 3) == 0
                               ? SurfaceElement::make(
                                     sp, oracle::random_poly(rng, kQ, {Var::Y, Var::Z, Var::T}, 1) * rel2)
                               : oracle::random_element(rng, sp);
        if ((a * b).is_zero()) CHECK((a.is_zero() || b.is_zero()));
    }
}
