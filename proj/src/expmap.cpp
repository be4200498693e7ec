#include "ddsurf/expmap.hpp"

namespace ddsurf {

namespace {

std::map<Var, MultiPoly> image_exprs(const ExpMap& phi) {
    std::map<Var, MultiPoly> images;
    for (const auto& [v, el] : phi.images) images.emplace(v, el.expr());
    return images;
}

// Generator images with U renamed to V: the extension of phi_V to B[U] fixing U.
std::map<Var, MultiPoly> image_exprs_u_to_v(const ExpMap& phi) {
    const Field& f = phi.spec->field;
    std::map<Var, MultiPoly> images;
    std::map<Var, MultiPoly> rename{{Var::U, MultiPoly::variable(f, Var::V)}};
    for (const auto& [v, el] : phi.images) images.emplace(v, substitute(el.expr(), rename));
    return images;
}

std::vector<Var> generators(const ExpMap& phi) {
    std::vector<Var> gens = {Var::X, Var::Y, Var::Z, Var::T};
    if (phi.extended()) gens.push_back(Var::W);
    return gens;
}

}  // namespace

SurfaceElement apply(const ExpMap& phi, const SurfaceElement& el) {
    if (!phi.spec->same_ring(*el.spec())) throw SpecError("spec mismatch between map and element");
    return SurfaceElement::make(el.spec(), substitute(el.expr(), image_exprs(phi)));
}

LaurentPoly apply_laurent(const ExpMap& phi, const MultiPoly& expr) {
    std::map<Var, LaurentPoly> images;
    for (const auto& [v, el] : phi.images) images.emplace(v, el.laurent());
    return substitute_laurent(expr, images);
}

ExpMap expmap_canonical(const SpecPtr& spec) {
    const Field& f = spec->field;
    MultiPoly x = MultiPoly::variable(f, Var::X);
    MultiPoly y = MultiPoly::variable(f, Var::Y);
    MultiPoly z = MultiPoly::variable(f, Var::Z);
    MultiPoly t = MultiPoly::variable(f, Var::T);
    MultiPoly u = MultiPoly::variable(f, Var::U);

    MultiPoly phi_z = z + x.pow(spec->d + spec->e) * u;
    // P(x, phi(z)) - P(x, z) is divisible by x^{d+e}, hence by x^d.
    MultiPoly dy = substitute(spec->P, {{Var::Z, phi_z}}) - spec->P;
    MultiPoly phi_y = y + divide_exact_varpow(dy, Var::X, spec->d);
    MultiPoly dt = substitute(spec->Q, {{Var::Y, phi_y}, {Var::Z, phi_z}}) - spec->Q;
    MultiPoly phi_t = t + divide_exact_varpow(dt, Var::X, spec->e);

    ExpMap phi;
    phi.spec = spec;
    phi.images.emplace(Var::X, SurfaceElement::generator(spec, Var::X));
    phi.images.emplace(Var::Y, SurfaceElement::make(spec, phi_y));
    phi.images.emplace(Var::Z, SurfaceElement::make(spec, phi_z));
    phi.images.emplace(Var::T, SurfaceElement::make(spec, phi_t));

    Report rep = verify_expmap(phi);
    if (!rep.pass())
        throw Error("internal divisibility failure: canonical exponential map failed verification:\n" +
                    rep.to_text());
    return phi;
}

ExpMap extend_to_A(const ExpMap& phi) {
    const Field& f = phi.spec->field;
    MultiPoly w = MultiPoly::variable(f, Var::W);
    MultiPoly xu = MultiPoly::variable(f, Var::X) * MultiPoly::variable(f, Var::U);
    ExpMap out = phi;
    out.images.insert_or_assign(Var::W, SurfaceElement::make(phi.spec, w - xu));
    Report rep = verify_expmap(out);
    if (!rep.pass()) throw Error("extension to B[w] failed axiom verification:\n" + rep.to_text());
    return out;
}

Report verify_expmap(const ExpMap& phi) {
    Report rep;
    const SpecPtr& spec = phi.spec;
    const Field& f = spec->field;

    for (Var v : generators(phi)) {
        if (!phi.images.count(v)) {
            rep.add(std::string("image-present-") + kVarNames[var_index(v)], false, "missing generator image");
            return rep;
        }
    }

    // Axiom (i): evaluation at U = 0 restores each generator.
    std::map<Var, MultiPoly> u_to_zero{{Var::U, MultiPoly(f)}};
    for (Var v : generators(phi)) {
        MultiPoly at0 = substitute(phi.image(v).expr(), u_to_zero);
        bool ok = SurfaceElement::make(spec, at0).equals(SurfaceElement::generator(spec, v));
        rep.add(std::string("axiom-i-") + kVarNames[var_index(v)], ok,
                ok ? "" : "image at U=0 differs from the generator");
    }

    // The images must respect the defining relations, otherwise no ring
    // homomorphism is defined at all.
    auto images = image_exprs(phi);
    MultiPoly rel1 = MultiPoly::monomial(FieldScalar::one(f), unit_exp(Var::X, spec->d)) *
                         MultiPoly::variable(f, Var::Y) -
                     spec->P;
    MultiPoly rel2 = MultiPoly::monomial(FieldScalar::one(f), unit_exp(Var::X, spec->e)) *
                         MultiPoly::variable(f, Var::T) -
                     spec->Q;
    for (auto [name, rel] : {std::pair{"relation-P", rel1}, std::pair{"relation-Q", rel2}}) {
        SurfaceElement img = SurfaceElement::make(spec, substitute(rel, images));
        rep.add(std::string("respects-") + name, img.is_zero(),
                img.is_zero() ? "" : "maps to " + img.to_string());
    }

    // Axiom (ii) on generators: phi_V(phi_U(g)) = phi_{U+V}(g).
    auto images_v = image_exprs_u_to_v(phi);
    std::map<Var, MultiPoly> u_to_uv{
        {Var::U, MultiPoly::variable(f, Var::U) + MultiPoly::variable(f, Var::V)}};
    for (Var g : generators(phi)) {
        MultiPoly lhs = substitute(phi.image(g).expr(), images_v);
        MultiPoly rhs = substitute(phi.image(g).expr(), u_to_uv);
        bool ok = SurfaceElement::make(spec, lhs).equals(SurfaceElement::make(spec, rhs));
        rep.add(std::string("axiom-ii-") + kVarNames[var_index(g)], ok,
                ok ? "" : "phi_V phi_U and phi_{U+V} differ");
    }

    rep.sort_by_name();
    return rep;
}

InvariantReport is_invariant(const ExpMap& phi, const SurfaceElement& el) {
    SurfaceElement image = apply(phi, el);
    InvariantReport out{el, image.equals(el), 0};
    out.u_degree = image.laurent().degree_in(Var::U).value_or(0);
    return out;
}

}  // namespace ddsurf
