#include "ddsurf/json_io.hpp"

namespace ddsurf {

json field_to_json(const Field& f) {
    if (f.is_rationals()) return "Q";
    return json{{"Fp", f.characteristic()}};
}

Field field_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "Q") return Field::rationals();
        throw SpecError("unknown field '" + j.get<std::string>() + "' (expected \"Q\" or {\"Fp\": p})");
    }
    if (j.is_object() && j.contains("Fp")) return Field::prime(j.at("Fp").get<long>());
    throw SpecError("malformed field descriptor (expected \"Q\" or {\"Fp\": p})");
}

json spec_to_json(const SurfaceSpec& spec) {
    return json{{"field", field_to_json(spec.field)},
                {"d", spec.d},
                {"e", spec.e},
                {"P", to_string(spec.P)},
                {"Q", to_string(spec.Q)}};
}

SpecPtr spec_from_json(const json& j) {
    Field f = field_from_json(j.at("field"));
    MultiPoly P = parse_poly(j.at("P").get<std::string>(), f, VarSet{Var::X, Var::Z});
    MultiPoly Q = parse_poly(j.at("Q").get<std::string>(), f, VarSet{Var::X, Var::Y, Var::Z});
    return surface_new(f, j.at("d").get<long>(), j.at("e").get<long>(), std::move(P), std::move(Q));
}

json expmap_to_json(const ExpMap& phi) {
    json j{{"x", phi.image(Var::X).to_string()},
           {"y", phi.image(Var::Y).to_string()},
           {"z", phi.image(Var::Z).to_string()},
           {"t", phi.image(Var::T).to_string()}};
    if (phi.extended()) j["w"] = phi.image(Var::W).to_string();
    return j;
}

ExpMap expmap_from_json(const SpecPtr& spec, const json& j) {
    VarSet allowed{Var::X, Var::Y, Var::Z, Var::T, Var::W, Var::U};
    auto parse_el = [&](const std::string& key) {
        return SurfaceElement::make(
            spec, parse_poly(j.at(key).get<std::string>(), spec->field, allowed, NameStyle::Element));
    };
    ExpMap phi;
    phi.spec = spec;
    phi.images.emplace(Var::X, parse_el("x"));
    phi.images.emplace(Var::Y, parse_el("y"));
    phi.images.emplace(Var::Z, parse_el("z"));
    phi.images.emplace(Var::T, parse_el("t"));
    if (j.contains("w")) phi.images.emplace(Var::W, parse_el("w"));
    return phi;
}

json isodata_to_json(const IsoData& data) {
    return json{{"lambda", data.lambda.to_string()},
                {"gamma", data.gamma.to_string()},
                {"delta", to_string(data.delta)},
                {"f", to_string(data.f)},
                {"h", to_string(data.h)}};
}

IsoData isodata_from_json(const Field& field, const json& j) {
    IsoData data{FieldScalar::parse(field, j.at("lambda").get<std::string>()),
                 FieldScalar::parse(field, j.at("gamma").get<std::string>()),
                 parse_poly(j.at("delta").get<std::string>(), field, VarSet{Var::X}),
                 parse_poly(j.at("f").get<std::string>(), field, VarSet{Var::X, Var::Z}),
                 parse_poly(j.at("h").get<std::string>(), field, VarSet{Var::X, Var::Y, Var::Z})};
    return data;
}

json certificate_to_json(const StableIsoCertificate& cert) {
    return json{{"source", spec_to_json(*cert.source)},
                {"target", spec_to_json(*cert.target)},
                {"a", to_string(cert.cofactors.a)},
                {"b", to_string(cert.cofactors.b)},
                {"c", to_string(cert.cofactors.c)},
                {"f", cert.f.to_string()},
                {"g", cert.g.to_string()},
                {"h", cert.h.to_string()},
                {"theta", cert.theta.to_string()},
                {"rho", cert.rho.to_string()},
                {"delta", cert.delta.to_string()},
                {"v", cert.v.to_string()},
                {"witnesses",
                 json{{"w", to_string(cert.w_wit, NameStyle::Witness)},
                      {"z", to_string(cert.z_wit, NameStyle::Witness)},
                      {"y", to_string(cert.y_wit, NameStyle::Witness)},
                      {"t", to_string(cert.t_wit, NameStyle::Witness)}}}};
}

StableIsoCertificate certificate_from_json(const json& j) {
    SpecPtr source = spec_from_json(j.at("source"));
    SpecPtr target = spec_from_json(j.at("target"));
    const Field& f = source->field;
    VarSet yz{Var::Y, Var::Z};
    VarSet element_vars{Var::X, Var::Y, Var::Z, Var::T, Var::W};
    auto el = [&](const char* key) {
        return SurfaceElement::make(
            source, parse_poly(j.at(key).get<std::string>(), f, element_vars, NameStyle::Element));
    };
    auto wit = [&](const char* key) {
        return parse_poly(j.at("witnesses").at(key).get<std::string>(), f, element_vars,
                          NameStyle::Witness);
    };
    return StableIsoCertificate{source,
                                target,
                                BezoutCofactors{parse_poly(j.at("a").get<std::string>(), f, yz),
                                                parse_poly(j.at("b").get<std::string>(), f, yz),
                                                parse_poly(j.at("c").get<std::string>(), f, yz)},
                                el("f"),
                                el("g"),
                                el("h"),
                                el("theta"),
                                el("rho"),
                                el("delta"),
                                el("v"),
                                wit("w"),
                                wit("z"),
                                wit("y"),
                                wit("t")};
}

json report_to_json(const Report& rep) {
    Report sorted = rep;
    sorted.sort_by_name();
    json checks = json::array();
    for (const auto& c : sorted.checks) {
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return json{{"checks", checks}, {"pass", rep.pass()}};
}

json noniso_to_json(const NonIsoCertificate& cert) {
    return json{{"left_tuple", cert.left.to_string()},
                {"right_tuple", cert.right.to_string()},
                {"differing", cert.differing},
                {"certified", cert.certified},
                {"reason", cert.reason}};
}

json fiber_to_json(const FiberSolveResult& res) {
    json cands = json::array();
    for (const auto& c : res.candidates) {
        cands.push_back(json{{"gamma", c.gamma.to_string()}, {"delta0", c.delta0.to_string()}});
    }
    return json{{"candidates", cands}, {"infinite_family", res.infinite_family}};
}

}  // namespace ddsurf
