#include "ddsurf/graded.hpp"

#include <random>

namespace ddsurf {

long filt_degree_B(const SurfaceElement& el) {
    auto ord = el.laurent().ord_x();
    if (!ord) throw SpecError("filtration degree of the zero element");
    return -*ord;
}

GradedElement rho_B(const SurfaceElement& el) {
    auto ord = el.laurent().ord_x();
    if (!ord) throw SpecError("leading form of the zero element");
    return {el.laurent().slice_x_order(*ord)};
}

long filt_degree_D(const SurfaceElement& el) {
    auto top = el.laurent().top_z();
    if (!top) throw SpecError("filtration degree of the zero element");
    return *top;
}

GradedElement rho_D(const SurfaceElement& el) {
    auto top = el.laurent().top_z();
    if (!top) throw SpecError("leading form of the zero element");
    return {el.laurent().slice_top_z()};
}

SpecPtr graded_spec_D(const SpecPtr& spec) {
    MultiPoly ys = MultiPoly::variable(spec->field, Var::Y).pow(spec->s);
    return surface_new(spec->field, spec->d, spec->e, spec->P0, ys);
}

SpecPtr graded_spec_C(const SpecPtr& spec) {
    MultiPoly zr = MultiPoly::variable(spec->field, Var::Z).pow(spec->r);
    MultiPoly ys = MultiPoly::variable(spec->field, Var::Y).pow(spec->s);
    return surface_new(spec->field, spec->d, spec->e, zr, ys);
}

namespace {

SurfaceElement random_element(const SpecPtr& spec, std::mt19937_64& rng) {
    const Field& f = spec->field;
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> exp_x(0, 2);
    std::uniform_int_distribution<int> exp_small(0, 2);
    std::uniform_int_distribution<int> nterms(1, 4);
    MultiPoly p(f);
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        ExpVec m{};
        m[var_index(Var::X)] = exp_x(rng);
        m[var_index(Var::Y)] = exp_small(rng);
        m[var_index(Var::Z)] = exp_small(rng);
        m[var_index(Var::T)] = exp_small(rng) == 2 ? 1 : 0;
        long c = coef(rng);
        if (c == 0) c = 1;
        detail_add_term(p, m, FieldScalar::from_long(f, c));
    }
    return SurfaceElement::make(spec, p);
}

}  // namespace

Report verify_graded_relations(const SpecPtr& spec, unsigned rng_seed) {
    Report rep;
    SpecPtr D = graded_spec_D(spec);
    SpecPtr C = graded_spec_C(spec);

    auto gen = [&](const SpecPtr& sp, Var v) { return SurfaceElement::generator(sp, v); };

    // gr(B) relations, identified inside D's Laurent ring.
    {
        GradedElement x = rho_B(gen(spec, Var::X));
        GradedElement y = rho_B(gen(spec, Var::Y));
        GradedElement z = rho_B(gen(spec, Var::Z));
        GradedElement t = rho_B(gen(spec, Var::T));
        LaurentPoly p0 = LaurentPoly::from_multi(spec->P0);
        rep.add("grB-relation-xy", (x.pow(spec->d) * y).slice == p0,
                "x~^d y~ should embed to P(0,z~)");
        rep.add("grB-relation-xt", x.pow(spec->e) * t == y.pow(spec->s),
                "x~^e t~ should equal y~^s");
        rep.add("grB-degree-x", filt_degree_B(gen(spec, Var::X)) == -1, "deg x = -1");
        rep.add("grB-degree-z", filt_degree_B(gen(spec, Var::Z)) == 0, "deg z = 0");
        rep.add("grB-degree-y", filt_degree_B(gen(spec, Var::Y)) == spec->d, "deg y = d");
        rep.add("grB-degree-t", filt_degree_B(gen(spec, Var::T)) == spec->d * spec->s + spec->e,
                "deg t = ds+e");
        // The slices of the generators are exactly the embedded generators of D.
        rep.add("grB-gen-x", x.slice == gen(D, Var::X).laurent(), "");
        rep.add("grB-gen-y", y.slice == gen(D, Var::Y).laurent(), "");
        rep.add("grB-gen-z", z.slice == gen(D, Var::Z).laurent(), "");
        rep.add("grB-gen-t", t.slice == gen(D, Var::T).laurent(), "");
    }

    // gr(D) relations, identified inside C's Laurent ring.
    {
        GradedElement x = rho_D(gen(D, Var::X));
        GradedElement y = rho_D(gen(D, Var::Y));
        GradedElement t = rho_D(gen(D, Var::T));
        GradedElement z = rho_D(gen(D, Var::Z));
        LaurentPoly zr = gen(C, Var::Z).laurent().pow(spec->r);
        rep.add("grD-relation-xy", (x.pow(spec->d) * y).slice == zr, "x-^d y- should equal z-^r");
        rep.add("grD-relation-xt", x.pow(spec->e) * t == y.pow(spec->s), "x-^e t- should equal y-^s");
        rep.add("grD-degree-x", filt_degree_D(gen(D, Var::X)) == 0, "deg x~ = 0");
        rep.add("grD-degree-z", filt_degree_D(gen(D, Var::Z)) == 1, "deg z~ = 1");
        rep.add("grD-degree-y", filt_degree_D(gen(D, Var::Y)) == spec->r, "deg y~ = r");
        rep.add("grD-degree-t", filt_degree_D(gen(D, Var::T)) == spec->r * spec->s, "deg t~ = rs");
        rep.add("grD-gen-x", x.slice == gen(C, Var::X).laurent(), "");
        rep.add("grD-gen-z", z.slice == gen(C, Var::Z).laurent(), "");
        rep.add("grD-gen-y", y.slice == gen(C, Var::Y).laurent(), "");
        rep.add("grD-gen-t", t.slice == gen(C, Var::T).laurent(), "");
    }

    // rho_B is multiplicative: leading slices of a domain multiply without
    // cancellation.
    {
        std::mt19937_64 rng(rng_seed);
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 100 && ok; ++i) {
            SurfaceElement a = random_element(spec, rng);
            SurfaceElement b = random_element(spec, rng);
            if (a.is_zero() || b.is_zero()) continue;
            SurfaceElement ab = a * b;
            if (!(rho_B(a) * rho_B(b) == rho_B(ab))) {
                ok = false;
                detail = "counterexample: a = " + a.to_string() + ", b = " + b.to_string();
            }
            if (filt_degree_B(ab) != filt_degree_B(a) + filt_degree_B(b)) {
                ok = false;
                detail = "degree not additive: a = " + a.to_string() + ", b = " + b.to_string();
            }
        }
        rep.add("grB-rho-multiplicative", ok, detail);
    }

    rep.sort_by_name();
    return rep;
}

}  // namespace ddsurf
