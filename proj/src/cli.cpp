#include "ddsurf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "ddsurf/graded.hpp"
#include "ddsurf/json_io.hpp"

namespace ddsurf {

namespace {

struct CliState {
    bool json_output = false;
    std::string out_path;
    std::string field_flag;

    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
    int exit_code = 0;
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SpecError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

std::optional<Field> parse_field_flag(const std::string& flag) {
    if (flag.empty()) return std::nullopt;
    if (flag == "Q") return Field::rationals();
    if (flag.rfind("Fp:", 0) == 0) return Field::prime(std::stol(flag.substr(3)));
    throw SpecError("bad --field value '" + flag + "' (expected Q or Fp:<p>)");
}

SpecPtr load_spec(const CliState& st, const std::string& path) {
    SpecPtr spec = spec_from_json(load_json(path));
    if (auto f = parse_field_flag(st.field_flag); f && !(*f == spec->field))
        throw SpecError("--field " + st.field_flag + " does not match the field of " + path);
    return spec;
}

void emit(CliState& st, const std::string& text, const json& j) {
    if (st.json_output)
        *st.out << j.dump(2) << "\n";
    else
        *st.out << text;
    if (!st.out_path.empty()) {
        std::ofstream f(st.out_path);
        if (!f) throw SpecError("cannot write file: " + st.out_path);
        f << j.dump(2) << "\n";
    }
}

void cmd_info(CliState& st, const std::string& spec_path) {
    SpecPtr spec = load_spec(st, spec_path);
    Report hyp = check_stable_hypotheses(spec);
    Tuple4 tup = invariants_tuple(*spec);
    std::ostringstream text;
    text << "field=" << spec->field.to_string() << " tuple=" << tup.to_string()
         << " double=" << (spec->is_double ? "yes" : "no") << " mlc=" << (spec->mlc ? "yes" : "no")
         << " stable-hyp=" << (hyp.pass() ? "pass" : "fail") << "\n"
         << hyp.to_text();
    json j{{"field", field_to_json(spec->field)},
           {"tuple", tup.to_string()},
           {"d", spec->d},
           {"e", spec->e},
           {"r", spec->r},
           {"s", spec->s},
           {"double", spec->is_double},
           {"mlc", spec->mlc},
           {"stable_hypotheses", report_to_json(hyp)}};
    emit(st, text.str(), j);
}

void cmd_normalize(CliState& st, const std::string& spec_path, const std::string& expr) {
    SpecPtr spec = load_spec(st, spec_path);
    SurfaceElement el = SurfaceElement::parse(spec, expr);
    NormalForm nf = normalize(el);
    std::ostringstream text;
    text << "normal form: " << nf.to_string() << "\n"
         << "laurent: " << to_string(el.laurent(), NameStyle::Element) << "\n";
    json j{{"normal_form", nf.to_string()},
           {"laurent", to_string(el.laurent(), NameStyle::Element)},
           {"within_bounds", nf.within_bounds()}};
    emit(st, text.str(), j);
}

void cmd_expmap_verify(CliState& st, const std::string& spec_path, const std::string& map_path) {
    SpecPtr spec = load_spec(st, spec_path);
    ExpMap phi = map_path.empty() ? expmap_canonical(spec) : expmap_from_json(spec, load_json(map_path));
    Report rep = verify_expmap(phi);
    std::ostringstream text;
    if (map_path.empty()) text << "canonical exponential map\n";
    text << rep.to_text() << (rep.pass() ? "all axioms hold\n" : "axiom verification FAILED\n");
    emit(st, text.str(), report_to_json(rep));
    if (!rep.pass()) st.exit_code = 1;
}

void cmd_iso_verify(CliState& st, const std::string& src_path, const std::string& tgt_path,
                    const std::string& data_path) {
    SpecPtr source = load_spec(st, src_path);
    SpecPtr target = load_spec(st, tgt_path);
    IsoData data = isodata_from_json(source->field, load_json(data_path));
    VerifiedIso iso = build_iso(source, target, data);
    std::ostringstream text;
    text << "isomorphism verified: both source relations die in the target\n"
         << "inverse verified and compositions are the identity on generators\n"
         << "psi(x) = " << iso.forward.images.at(Var::X).to_string() << "\n"
         << "psi(z) = " << iso.forward.images.at(Var::Z).to_string() << "\n"
         << "psi(y) = " << iso.forward.images.at(Var::Y).to_string() << "\n"
         << "psi(t) = " << iso.forward.images.at(Var::T).to_string() << "\n";
    json j{{"verified", true},
           {"data", isodata_to_json(iso.data)},
           {"inverse_data", isodata_to_json(iso.inverse_data)}};
    emit(st, text.str(), j);
}

void cmd_iso_solve(CliState& st, const std::string& src_path, const std::string& tgt_path) {
    SpecPtr source = load_spec(st, src_path);
    SpecPtr target = load_spec(st, tgt_path);
    FiberSolveResult res = solve_fiber_conditions(source, target);
    std::ostringstream text;
    if (res.infinite_family)
        text << "every nonzero gamma works (constraints vanish identically); sample candidates:\n";
    else
        text << res.candidates.size() << " rational candidate(s) for (gamma, delta0):\n";
    for (const auto& c : res.candidates)
        text << "  gamma = " << c.gamma.to_string() << ", delta0 = " << c.delta0.to_string() << "\n";
    emit(st, text.str(), fiber_to_json(res));
}

void cmd_auto(CliState& st, const std::string& spec_path, const std::string& lambda_s,
              const std::string& lambda2_s, const std::string& mu2_s) {
    SpecPtr spec = load_spec(st, spec_path);
    FieldScalar lambda = FieldScalar::parse(spec->field, lambda_s);
    FieldScalar lambda2 = FieldScalar::parse(spec->field, lambda2_s);
    MultiPoly mu2 = parse_poly(mu2_s, spec->field, VarSet{Var::X});
    VerifiedIso iso = auto_from_seed(spec, lambda, lambda2, mu2);
    Report props = verify_auto_properties(iso.forward);
    std::ostringstream text;
    text << "automorphism built from seed and verified\n"
         << "psi(y) = " << iso.forward.images.at(Var::Y).to_string() << "\n"
         << "psi(t) = " << iso.forward.images.at(Var::T).to_string() << "\n"
         << props.to_text();
    json j{{"verified", true},
           {"data", isodata_to_json(iso.data)},
           {"properties", report_to_json(props)}};
    emit(st, text.str(), j);
    if (!props.pass()) st.exit_code = 1;
}

void cmd_stable_build(CliState& st, const std::string& spec_path) {
    SpecPtr spec = load_spec(st, spec_path);
    StableIsoCertificate cert = build_stable_iso(spec);
    json j = certificate_to_json(cert);
    emit(st, j.dump(2) + "\n", j);
}

void cmd_stable_verify(CliState& st, const std::string& cert_path) {
    StableIsoCertificate cert = certificate_from_json(load_json(cert_path));
    Report rep = verify_certificate(cert);
    std::ostringstream text;
    text << rep.to_text() << rep.passed() << "/" << rep.checks.size() << " PASS\n";
    emit(st, text.str(), report_to_json(rep));
    if (!rep.pass()) st.exit_code = 1;
}

void cmd_cancel_demo(CliState& st, const std::string& spec_path) {
    SpecPtr lower = load_spec(st, spec_path);
    CancelDemoReport rep = cancellation_demo(lower);
    std::ostringstream text;
    text << "lower surface:  tuple " << invariants_tuple(*rep.lower).to_string() << "\n"
         << "upper surface:  tuple " << invariants_tuple(*rep.upper).to_string() << "\n"
         << "non-isomorphism: " << rep.non_iso.reason << "\n"
         << "stable hypotheses (upper):\n"
         << rep.hypotheses.to_text() << "stable certificate (upper -> lower):\n"
         << rep.certificate.to_text()
         << (rep.pass ? "cancellation counter-example verified\n" : "pipeline FAILED\n");
    json j{{"non_isomorphism", noniso_to_json(rep.non_iso)},
           {"hypotheses", report_to_json(rep.hypotheses)},
           {"certificate", report_to_json(rep.certificate)},
           {"pass", rep.pass}};
    emit(st, text.str(), j);
    if (!rep.pass) st.exit_code = 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliState st;
    st.out = &out;
    st.err = &err;

    CLI::App app{"exact certificates for double Danielewski surfaces"};
    app.add_flag("--json", st.json_output, "machine-readable JSON on stdout");
    app.add_option("--out", st.out_path, "also write the JSON result to this path");
    app.add_option("--field", st.field_flag, "expected coefficient field: Q or Fp:<p>");
    app.require_subcommand(1);

    std::string spec_path, map_path, src_path, tgt_path, data_path, cert_path, expr;
    std::string lambda_s, lambda2_s, mu2_s = "0";

    auto* info = app.add_subcommand("info", "surface invariants and flags");
    info->fallthrough();
    info->add_option("spec", spec_path)->required();

    auto* norm = app.add_subcommand("normalize", "rewrite an element and print its Laurent image");
    norm->fallthrough();
    norm->add_option("spec", spec_path)->required();
    norm->add_option("expr", expr)->required();

    auto* emv = app.add_subcommand("expmap-verify", "verify exponential-map axioms");
    emv->fallthrough();
    emv->add_option("spec", spec_path)->required();
    emv->add_option("map", map_path);

    auto* iso = app.add_subcommand("iso", "isomorphism certificates");
    iso->fallthrough();
    iso->require_subcommand(1);
    auto* iso_verify = iso->add_subcommand("verify", "build and verify from data");
    iso_verify->fallthrough();
    iso_verify->add_option("source", src_path)->required();
    iso_verify->add_option("target", tgt_path)->required();
    iso_verify->add_option("data", data_path)->required();
    auto* iso_solve = iso->add_subcommand("solve", "solve the x = 0 compatibility conditions over Q");
    iso_solve->fallthrough();
    iso_solve->add_option("source", src_path)->required();
    iso_solve->add_option("target", tgt_path)->required();

    auto* aut = app.add_subcommand("auto", "extend a seed to an automorphism");
    aut->fallthrough();
    aut->add_option("spec", spec_path)->required();
    aut->add_option("--lambda", lambda_s)->required();
    aut->add_option("--lambda2", lambda2_s)->required();
    aut->add_option("--mu2", mu2_s);

    auto* stable = app.add_subcommand("stable", "stable isomorphism certificates");
    stable->fallthrough();
    stable->require_subcommand(1);
    auto* sb = stable->add_subcommand("build", "build the certificate for (d,e) -> (d,e-1)");
    sb->fallthrough();
    sb->add_option("spec", spec_path)->required();
    auto* sv = stable->add_subcommand("verify", "verify a certificate file");
    sv->fallthrough();
    sv->add_option("cert", cert_path)->required();

    auto* demo = app.add_subcommand("cancel-demo", "non-isomorphic surfaces, isomorphic cylinders");
    demo->fallthrough();
    demo->add_option("spec", spec_path)->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*info) cmd_info(st, spec_path);
        if (*norm) cmd_normalize(st, spec_path, expr);
        if (*emv) cmd_expmap_verify(st, spec_path, map_path);
        if (*iso_verify) cmd_iso_verify(st, src_path, tgt_path, data_path);
        if (*iso_solve) cmd_iso_solve(st, src_path, tgt_path);
        if (*aut) cmd_auto(st, spec_path, lambda_s, lambda2_s, mu2_s);
        if (*sb) cmd_stable_build(st, spec_path);
        if (*sv) cmd_stable_verify(st, cert_path);
        if (*demo) cmd_cancel_demo(st, spec_path);
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const SpecError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const FieldMismatchError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        // Mathematical refusals: NotUnit, NotDivisible, RelationNotKilled,
        // SeedNotExtendable, runaway limits.
        err << "check failed: " << e.what() << "\n";
        return 1;
    }
    return st.exit_code;
}

}  // namespace ddsurf
