#include "ddsurf/morphisms.hpp"

#include <algorithm>

namespace ddsurf {

namespace {

MultiPoly var_poly(const Field& f, Var v) { return MultiPoly::variable(f, v); }

struct DerivedIso {
    FieldScalar tau, nu, kappa;
    MultiPoly g;
};

DerivedIso derive(const IsoData& data, const SurfaceSpec& source) {
    DerivedIso d;
    d.tau = data.gamma.pow(source.r);
    d.nu = data.lambda.pow(-source.d) * d.tau;
    d.kappa = d.nu.pow(source.s);
    d.g = data.f.scale(data.lambda.pow(-source.d));
    return d;
}

void validate_iso_data(const IsoData& data, const SurfaceSpec& spec) {
    if (!(data.lambda.field() == spec.field) || !(data.gamma.field() == spec.field))
        throw FieldMismatchError("isomorphism data over the wrong field");
    if (data.lambda.is_zero() || data.gamma.is_zero())
        throw SpecError("lambda and gamma must be nonzero");
    if (!data.delta.supported_on(VarSet{Var::X})) throw SpecError("delta must be a polynomial in X");
    if (!data.f.supported_on(VarSet{Var::X, Var::Z})) throw SpecError("f must be a polynomial in X and Z");
    if (!data.h.supported_on(VarSet{Var::X, Var::Y, Var::Z}))
        throw SpecError("h must be a polynomial in X, Y and Z");
}

Morphism build_morphism(const SpecPtr& source, const SpecPtr& target, const IsoData& data) {
    validate_iso_data(data, *source);
    const Field& f = source->field;
    DerivedIso dv = derive(data, *source);

    MultiPoly X = var_poly(f, Var::X), Y = var_poly(f, Var::Y), Z = var_poly(f, Var::Z),
              T = var_poly(f, Var::T);
    MultiPoly ex = X.scale(data.lambda);
    MultiPoly ez = Z.scale(data.gamma) + data.delta;
    MultiPoly ey = Y.scale(dv.nu) + dv.g;
    MultiPoly et = (T.scale(dv.kappa) + data.h).scale(data.lambda.pow(-source->e));

    std::map<Var, MultiPoly> sub{{Var::X, ex}, {Var::Y, ey}, {Var::Z, ez}, {Var::T, et}};
    MultiPoly rel_p =
        MultiPoly::monomial(FieldScalar::one(f), unit_exp(Var::X, source->d)) * Y - source->P;
    MultiPoly rel_q =
        MultiPoly::monomial(FieldScalar::one(f), unit_exp(Var::X, source->e)) * T - source->Q;
    SurfaceElement img_p = SurfaceElement::make(target, substitute(rel_p, sub));
    if (!img_p.is_zero()) throw RelationNotKilledError("X^d*Y - P", img_p.to_string());
    SurfaceElement img_q = SurfaceElement::make(target, substitute(rel_q, sub));
    if (!img_q.is_zero()) throw RelationNotKilledError("X^e*T - Q", img_q.to_string());

    Morphism m;
    m.source = source;
    m.target = target;
    m.images.emplace(Var::X, SurfaceElement::make(target, ex));
    m.images.emplace(Var::Y, SurfaceElement::make(target, ey));
    m.images.emplace(Var::Z, SurfaceElement::make(target, ez));
    m.images.emplace(Var::T, SurfaceElement::make(target, et));
    return m;
}

bool divisible_by_xpow(const MultiPoly& p, long n) {
    try {
        divide_exact_varpow(p, Var::X, n);
        return true;
    } catch (const NotDivisibleError&) {
        return false;
    }
}

}  // namespace

SurfaceElement apply(const Morphism& psi, const SurfaceElement& el) {
    if (!psi.source->same_ring(*el.spec())) throw SpecError("element does not live on the morphism's source");
    std::map<Var, MultiPoly> sub;
    for (const auto& [v, img] : psi.images) sub.emplace(v, img.expr());
    return SurfaceElement::make(psi.target, substitute(el.expr(), sub));
}

std::string Tuple4::to_string() const {
    return "(" + std::to_string(d) + "," + std::to_string(e) + "," + std::to_string(r) + "," +
           std::to_string(s) + ")";
}

Tuple4 invariants_tuple(const SurfaceSpec& spec) { return {spec.d, spec.e, spec.r, spec.s}; }

NonIsoCertificate certify_non_isomorphic(const SpecPtr& a, const SpecPtr& b) {
    NonIsoCertificate cert;
    cert.left = invariants_tuple(*a);
    cert.right = invariants_tuple(*b);
    if (cert.left.d != cert.right.d) cert.differing.push_back("d");
    if (cert.left.e != cert.right.e) cert.differing.push_back("e");
    if (cert.left.r != cert.right.r) cert.differing.push_back("r");
    if (cert.left.s != cert.right.s) cert.differing.push_back("s");
    if (!a->mlc || !b->mlc) {
        cert.certified = false;
        cert.reason = "refused: tuple-based certification requires the mlc flag on both surfaces";
        return cert;
    }
    if (cert.differing.empty()) {
        cert.certified = false;
        cert.reason = "inconclusive: invariant tuples are equal (the tuple test is only necessary)";
        return cert;
    }
    cert.certified = true;
    std::string names;
    for (const auto& n : cert.differing) names += (names.empty() ? "" : ", ") + n;
    cert.reason = "not isomorphic: invariant tuples " + cert.left.to_string() + " vs " +
                  cert.right.to_string() + " differ in " + names;
    return cert;
}

IsoData invert_iso_data(const IsoData& data, const SurfaceSpec& source) {
    const Field& fld = source.field;
    DerivedIso dv = derive(data, source);
    FieldScalar li = data.lambda.inverse();
    FieldScalar gi = data.gamma.inverse();

    IsoData inv;
    inv.lambda = li;
    inv.gamma = gi;
    // delta'(X) = -gamma^{-1} delta(lambda^{-1} X)
    MultiPoly xl = var_poly(fld, Var::X).scale(li);
    inv.delta = substitute(data.delta, {{Var::X, xl}}).scale(-gi);
    // g'(X,Z) = -nu^{-1} g(lambda^{-1}X, gamma^{-1}Z + delta'(X)), f' = lambda^{-d} g'
    MultiPoly zl = var_poly(fld, Var::Z).scale(gi) + inv.delta;
    MultiPoly gprime = substitute(dv.g, {{Var::X, xl}, {Var::Z, zl}}).scale(-dv.nu.inverse());
    inv.f = gprime.scale(data.lambda.pow(-source.d));
    // h'(X,Y,Z) = -lambda^{-e} kappa^{-1} h(lambda^{-1}X, nu^{-1}Y + g'(X,Z), gamma^{-1}Z + delta'(X))
    MultiPoly yl = var_poly(fld, Var::Y).scale(dv.nu.inverse()) + gprime;
    inv.h = substitute(data.h, {{Var::X, xl}, {Var::Y, yl}, {Var::Z, zl}})
                .scale(-(data.lambda.pow(-source.e) * dv.kappa.inverse()));
    return inv;
}

VerifiedIso build_iso(const SpecPtr& source, const SpecPtr& target, const IsoData& data) {
    if (!(invariants_tuple(*source) == invariants_tuple(*target)))
        throw SpecError("invariant tuples differ: " + invariants_tuple(*source).to_string() + " vs " +
                        invariants_tuple(*target).to_string());

    VerifiedIso iso;
    iso.data = data;
    iso.forward = build_morphism(source, target, data);
    iso.inverse_data = invert_iso_data(data, *source);
    iso.inverse = build_morphism(target, source, iso.inverse_data);

    for (Var v : {Var::X, Var::Y, Var::Z, Var::T}) {
        SurfaceElement g_src = SurfaceElement::generator(source, v);
        if (!apply(iso.inverse, apply(iso.forward, g_src)).equals(g_src))
            throw Error("inverse composition is not the identity on the source");
        SurfaceElement g_tgt = SurfaceElement::generator(target, v);
        if (!apply(iso.forward, apply(iso.inverse, g_tgt)).equals(g_tgt))
            throw Error("inverse composition is not the identity on the target");
    }
    return iso;
}

namespace {

std::vector<FieldScalar> rational_roots(const MultiPoly& g, Var var) {
    // Rational-root theorem on the primitive integer form of g.
    long deg = g.degree_in(var).value();
    std::vector<mpq_class> coeffs(static_cast<std::size_t>(deg) + 1);
    mpz_class den_lcm(1);
    for (long k = 0; k <= deg; ++k) {
        auto c = g.coeff_of(var, k).as_constant().value();
        coeffs[static_cast<std::size_t>(k)] = c.rational();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.rational().get_den().get_mpz_t());
    }
    std::vector<mpz_class> ic;
    for (auto& c : coeffs) ic.push_back(mpz_class(c * den_lcm));
    mpz_class a0 = ic.front(), an = ic.back();
    if (a0 == 0) throw SpecError("internal: constant term vanished after stripping");
    auto divisors = [](mpz_class n) {
        n = abs(n);
        if (!n.fits_slong_p()) throw LimitError("rational root search needs small coefficients");
        long v = n.get_si();
        std::vector<long> out;
        for (long q = 1; q * q <= v; ++q) {
            if (v % q == 0) {
                out.push_back(q);
                if (q != v / q) out.push_back(v / q);
            }
        }
        return out;
    };
    std::vector<FieldScalar> roots;
    for (long p : divisors(a0)) {
        for (long q : divisors(an)) {
            for (int sign : {1, -1}) {
                FieldScalar cand = FieldScalar::from_ratio(Field::rationals(), sign * p, q);
                std::array<FieldScalar, kNumVars> point;
                point.fill(FieldScalar::zero(Field::rationals()));
                point[var_index(var)] = cand;
                if (!evaluate(g, point).is_zero()) continue;
                if (std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
            }
        }
    }
    return roots;
}

}  // namespace

FiberSolveResult solve_fiber_conditions(const SpecPtr& source, const SpecPtr& target) {
    const Field& fld = source->field;
    if (!fld.is_rationals())
        throw SpecError("refused in characteristic p: delta0 is determined by dividing by r, "
                        "which needs characteristic 0 (or at least char not dividing r)");
    if (source->r < 2) throw SpecError("the fiber solver needs r >= 2");

    FiberSolveResult out;
    if (source->r != target->r) return out;  // degree mismatch: no solutions
    long r = source->r;

    auto coeff = [&](const MultiPoly& p, long k) {
        return p.coeff_of(Var::Z, k).as_constant().value();
    };
    FieldScalar sig = coeff(source->P0, r - 1);  // Z^{r-1} of P_source(0,Z)
    FieldScalar tc = coeff(target->P0, r - 1);  // Z^{r-1} of P_target(0,Z)
    FieldScalar rinv = FieldScalar::from_long(fld, r).inverse();

    // gamma is carried by the symbol U; delta0(U) = (U t_{r-1} - sigma_{r-1})/r.
    MultiPoly gammaU = var_poly(fld, Var::U);
    MultiPoly delta0U = (gammaU.scale(tc) - MultiPoly::constant(sig)).scale(rinv);

    MultiPoly zsub = var_poly(fld, Var::Z) * gammaU + delta0U;
    MultiPoly img = substitute(source->P0, {{Var::Z, zsub}}) - gammaU.pow(r) * target->P0;
    if (!img.coeff_of(Var::Z, r).is_zero() || !img.coeff_of(Var::Z, r - 1).is_zero())
        throw Error("internal: leading fiber constraints did not cancel");

    std::vector<MultiPoly> constraints;
    for (long j = 0; j <= r - 2; ++j) {
        MultiPoly gj = img.coeff_of(Var::Z, j);
        if (!gj.is_zero()) constraints.push_back(gj);
    }

    auto delta_at = [&](const FieldScalar& gamma) {
        return (gamma * tc - sig) * rinv;
    };

    if (constraints.empty()) {
        out.infinite_family = true;
        for (long v : {1L, -1L}) {
            FieldScalar gm = FieldScalar::from_long(fld, v);
            out.candidates.push_back({gm, delta_at(gm)});
        }
        return out;
    }

    MultiPoly g = constraints[0];
    for (std::size_t i = 1; i < constraints.size(); ++i)
        g = ext_gcd_univariate(g, constraints[i], Var::U).g;

    // gamma = 0 is never admissible; strip U factors.
    long low = 0;
    while (g.coeff_of(Var::U, low).is_zero()) ++low;
    if (low > 0) g = divide_exact_varpow(g, Var::U, low);

    if (g.degree_in(Var::U).value() == 0) return out;  // unit gcd: no common roots

    for (const FieldScalar& gamma : rational_roots(g, Var::U)) {
        // Confirm against the full constraint system, not just the gcd.
        bool ok = !gamma.is_zero();
        for (const auto& c : constraints) {
            std::array<FieldScalar, kNumVars> point;
            point.fill(FieldScalar::zero(fld));
            point[var_index(Var::U)] = gamma;
            if (!evaluate(c, point).is_zero()) ok = false;
        }
        if (ok) out.candidates.push_back({gamma, delta_at(gamma)});
    }
    std::sort(out.candidates.begin(), out.candidates.end(),
              [](const FiberSolution& a, const FiberSolution& b) {
                  return a.gamma.rational() < b.gamma.rational();
              });
    return out;
}

VerifiedIso auto_from_seed(const SpecPtr& spec, const FieldScalar& lambda, const FieldScalar& lambda2,
                           const MultiPoly& mu2) {
    const Field& fld = spec->field;
    if (lambda.is_zero() || lambda2.is_zero()) throw SpecError("lambda and lambda2 must be nonzero");
    if (!mu2.supported_on(VarSet{Var::X})) throw SpecError("mu2 must be a polynomial in X");

    MultiPoly ex = var_poly(fld, Var::X).scale(lambda);
    MultiPoly ez = var_poly(fld, Var::Z).scale(lambda2) + mu2;
    FieldScalar tau = lambda2.pow(spec->r);
    MultiPoly dp = substitute(spec->P, {{Var::X, ex}, {Var::Z, ez}}) - spec->P.scale(tau);
    if (!divisible_by_xpow(dp, spec->d))
        throw SeedNotExtendableError("P(lambda*X, lambda2*Z + mu2) - tau*P is not divisible by X^" +
                                     std::to_string(spec->d));
    MultiPoly fhat = dp.is_zero() ? MultiPoly(fld) : divide_exact_varpow(dp, Var::X, spec->d);

    FieldScalar nu = lambda.pow(-spec->d) * tau;
    MultiPoly ghat = fhat.scale(lambda.pow(-spec->d));
    FieldScalar kappa = nu.pow(spec->s);
    MultiPoly ey = var_poly(fld, Var::Y).scale(nu) + ghat;
    MultiPoly dq = substitute(spec->Q, {{Var::X, ex}, {Var::Y, ey}, {Var::Z, ez}}) - spec->Q.scale(kappa);
    if (!divisible_by_xpow(dq, spec->e))
        throw SeedNotExtendableError("Q-compatibility is not divisible by X^" + std::to_string(spec->e));
    MultiPoly hhat = dq.is_zero() ? MultiPoly(fld) : divide_exact_varpow(dq, Var::X, spec->e);

    return build_iso(spec, spec, IsoData{lambda, lambda2, mu2, fhat, hhat});
}

Report verify_auto_properties(const Morphism& psi) {
    if (!psi.source->same_ring(*psi.target))
        throw SpecError("automorphism property checks need source = target");
    const SurfaceSpec& sp = *psi.source;
    const Field& fld = sp.field;
    Report rep;

    // (ii) psi(x) = lambda x.
    FieldScalar lambda = FieldScalar::zero(fld);
    {
        const LaurentPoly& lx = psi.images.at(Var::X).laurent();
        bool ok = lx.terms().size() == 1 && lx.terms().begin()->first == unit_exp(Var::X);
        if (ok) lambda = lx.terms().begin()->second;
        rep.add("prop-ii-x-scaled", ok, ok ? "lambda = " + lambda.to_string() : "psi(x) is not a multiple of x");
    }

    // (i) psi(z) = lambda2 z + mu2(x) with lambda2 a unit: preserves k[x,z].
    FieldScalar lambda2 = FieldScalar::zero(fld);
    MultiPoly mu2(fld);
    bool shape_z = false;
    {
        const LaurentPoly& lz = psi.images.at(Var::Z).laurent();
        shape_z = lz.is_polynomial();
        MultiPoly pz(fld);
        if (shape_z) {
            pz = lz.to_multi();
            shape_z = pz.supported_on(VarSet{Var::X, Var::Z}) && pz.degree_in(Var::Z) == 1;
        }
        if (shape_z) {
            auto top = pz.coeff_of(Var::Z, 1).as_constant();
            shape_z = top.has_value() && !top->is_zero();
            if (shape_z) {
                lambda2 = *top;
                mu2 = pz.coeff_of(Var::Z, 0);
            }
        }
        rep.add("prop-i-kxz-preserved", shape_z,
                shape_z ? "psi(z) = " + to_string(pz, NameStyle::Element)
                        : "psi(z) is not of the form lambda2*z + mu2(x)");
    }

    // (iii) the ideal (x^d, P) of k[x,z] is preserved.
    if (shape_z && !lambda.is_zero()) {
        MultiPoly ex = var_poly(fld, Var::X).scale(lambda);
        MultiPoly ez = var_poly(fld, Var::Z).scale(lambda2) + mu2;
        MultiPoly fp = substitute(sp.P, {{Var::X, ex}, {Var::Z, ez}});
        MultiPoly rem = divmod_monic(fp, sp.P, Var::Z).second;
        bool ok = divisible_by_xpow(rem, sp.d);
        rep.add("prop-iii-idealP-preserved", ok,
                ok ? "" : "psi(P) is not in (x^d, P) k[x,z]");
    } else {
        rep.add("prop-iii-idealP-preserved", false, "not checked: prerequisite (i)/(ii) failed");
    }

    // (iv) psi(y) = nu y + g(x,z): preserves k[x,y,z].
    FieldScalar nu = FieldScalar::zero(fld);
    MultiPoly gdet(fld);
    bool shape_y = false;
    {
        const LaurentPoly& ly = psi.images.at(Var::Y).laurent();
        LaurentPoly slice = ly.slice_x_order(-sp.d).mul_xpow(sp.d);
        if (slice.is_polynomial()) {
            MultiPoly sm = slice.to_multi();
            auto top = sm.coeff_of(Var::Z, sp.r).as_constant();
            if (top.has_value() && !top->is_zero() && sm == sp.P0.scale(*top)) {
                nu = *top;
                LaurentPoly rest = ly - psi.source->y_image.scale(nu);
                if (rest.is_polynomial()) {
                    MultiPoly rm = rest.to_multi();
                    if (rm.supported_on(VarSet{Var::X, Var::Z})) {
                        shape_y = true;
                        gdet = rm;
                    }
                }
            }
        }
        rep.add("prop-iv-kxyz-preserved", shape_y,
                shape_y ? "psi(y) = nu*y + g with nu = " + nu.to_string()
                        : "psi(y) is not of the form nu*y + g(x,z)");
    }

    // (v) the ideal (x^e, Q) of k[x,y,z] is preserved.
    if (shape_z && shape_y && !lambda.is_zero()) {
        MultiPoly ex = var_poly(fld, Var::X).scale(lambda);
        MultiPoly ez = var_poly(fld, Var::Z).scale(lambda2) + mu2;
        MultiPoly ey = var_poly(fld, Var::Y).scale(nu) + gdet;
        MultiPoly fq = substitute(sp.Q, {{Var::X, ex}, {Var::Y, ey}, {Var::Z, ez}});
        MultiPoly rem = divmod_monic(fq, sp.Q, Var::Y).second;
        bool ok = divisible_by_xpow(rem, sp.e);
        rep.add("prop-v-idealQ-preserved", ok, ok ? "" : "psi(Q) is not in (x^e, Q) k[x,y,z]");
    } else {
        rep.add("prop-v-idealQ-preserved", false, "not checked: prerequisite failed");
    }

    // (vi) psi(t) = a t + b with a in k*, b in k[x,y,z]. The image in A/xA
    // determines a canonically.
    {
        const SurfaceElement& pt = psi.images.at(Var::T);
        MultiPoly rm = reduce_mod_x(pt);
        auto tdeg = rm.degree_in(Var::T);
        bool ok = tdeg.has_value() && *tdeg == 1;
        FieldScalar a = FieldScalar::zero(fld);
        if (ok) {
            auto ac = rm.coeff_of(Var::T, 1).as_constant();
            ok = ac.has_value() && !ac->is_zero();
            if (ok) a = *ac;
        }
        if (ok) {
            SurfaceElement b_el = pt - SurfaceElement::generator(psi.source, Var::T).scale(a);
            NormalForm nf = normalize(b_el);
            ok = !nf.expr.degree_in(Var::T).has_value() || nf.expr.degree_in(Var::T) == 0;
            rep.add("prop-vi-t-affine", ok,
                    ok ? "a = " + a.to_string() : "psi(t) - a*t does not rewrite into k[x,y,z]");
        } else {
            rep.add("prop-vi-t-affine", false, "no unit multiple of t in psi(t)");
        }
    }

    rep.sort_by_name();
    return rep;
}

SpecPtr danielewski_to_standard(const Field& field, long n, const MultiPoly& f) {
    if (n < 2) throw SpecError("n must be at least 2");
    if (!f.supported_on(VarSet{Var::X, Var::Z})) throw SpecError("f must be a polynomial in X and Z");
    auto dz = f.degree_in(Var::Z);
    if (!dz || *dz < 2) throw SpecError("deg_Z f must be at least 2");
    MultiPoly f0 = substitute(f, {{Var::X, MultiPoly(field)}});
    if (f0.is_zero()) throw SpecError("f(0,Z) must be nonzero (X divides f)");
    MultiPoly f1 = divide_exact_varpow(f - f0, Var::X, 1);
    MultiPoly Q = MultiPoly::variable(field, Var::Y) + f1;
    return surface_new(field, 1, n - 1, f0, Q);
}

}  // namespace ddsurf
