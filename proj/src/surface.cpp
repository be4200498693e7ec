#include "ddsurf/surface.hpp"

#include <algorithm>

namespace ddsurf {

namespace {

void check_monic(const MultiPoly& p, Var v, long deg, const char* name, const char* var_name) {
    auto lead = p.coeff_of(v, deg).as_constant();
    if (!lead || !lead->is_one())
        throw SpecError(std::string(name) + " is not monic in " + var_name + " (leading coefficient must be 1)");
}

const SurfaceSpec& require_same_ring(const SurfaceElement& a, const SurfaceElement& b) {
    if (!a.spec()->same_ring(*b.spec())) throw SpecError("spec mismatch between surface elements");
    return *a.spec();
}

}  // namespace

SpecPtr surface_new(const Field& field, long d, long e, MultiPoly P, MultiPoly Q) {
    if (!(P.field() == field) || !(Q.field() == field))
        throw FieldMismatchError("P and Q must be over the surface's coefficient field");
    if (d < 1 || e < 1) throw SpecError("d and e must be positive integers");
    if (!P.supported_on(VarSet{Var::X, Var::Z})) throw SpecError("P must be a polynomial in X and Z");
    if (!Q.supported_on(VarSet{Var::X, Var::Y, Var::Z})) throw SpecError("Q must be a polynomial in X, Y and Z");

    auto rdeg = P.degree_in(Var::Z);
    if (!rdeg || *rdeg < 1) throw SpecError("r = deg_Z P must be at least 1");
    check_monic(P, Var::Z, *rdeg, "P", "Z");

    auto sdeg = Q.degree_in(Var::Y);
    if (!sdeg || *sdeg < 1) throw SpecError("s = deg_Y Q must be at least 1");
    check_monic(Q, Var::Y, *sdeg, "Q", "Y");

    auto spec = std::make_shared<SurfaceSpec>();
    spec->field = field;
    spec->d = d;
    spec->e = e;
    spec->P = std::move(P);
    spec->Q = std::move(Q);
    spec->r = *rdeg;
    spec->s = *sdeg;
    spec->is_double = spec->r >= 2 && spec->s >= 2;
    spec->mlc = (spec->r >= 2 && spec->s >= 2) || (spec->r >= 2 && spec->s == 1) ||
                (spec->r == 1 && spec->s >= 2 && e >= 2);

    std::map<Var, MultiPoly> at0{{Var::X, MultiPoly(field)}};
    spec->P0 = substitute(spec->P, at0);
    spec->Q0 = substitute(spec->Q, at0);

    spec->y_image = LaurentPoly::from_multi(spec->P).mul_xpow(-d);
    spec->t_image = substitute_laurent(spec->Q, {{Var::Y, spec->y_image}}).mul_xpow(-e);
    return spec;
}

SurfaceElement SurfaceElement::make(SpecPtr spec, MultiPoly expr) {
    if (!(expr.field() == spec->field)) throw FieldMismatchError("element over the wrong coefficient field");
    LaurentPoly img =
        substitute_laurent(expr, {{Var::Y, spec->y_image}, {Var::T, spec->t_image}});
    return SurfaceElement(std::move(spec), std::move(expr), std::move(img));
}

SurfaceElement SurfaceElement::parse(SpecPtr spec, const std::string& text, NameStyle style) {
    MultiPoly p = parse_poly(text, spec->field, VarSet::all(), style);
    return make(std::move(spec), std::move(p));
}

SurfaceElement SurfaceElement::generator(SpecPtr spec, Var v) {
    MultiPoly expr = MultiPoly::variable(spec->field, v);
    return make(std::move(spec), std::move(expr));
}

SurfaceElement SurfaceElement::constant(SpecPtr spec, FieldScalar c) {
    return make(std::move(spec), MultiPoly::constant(std::move(c)));
}

SurfaceElement SurfaceElement::from_long(SpecPtr spec, long n) {
    MultiPoly expr = MultiPoly::from_long(spec->field, n);
    return make(std::move(spec), std::move(expr));
}

bool SurfaceElement::equals(const SurfaceElement& o) const {
    require_same_ring(*this, o);
    return laurent_ == o.laurent_;
}

SurfaceElement SurfaceElement::operator+(const SurfaceElement& o) const {
    require_same_ring(*this, o);
    return SurfaceElement(spec_, expr_ + o.expr_, laurent_ + o.laurent_);
}

SurfaceElement SurfaceElement::operator-(const SurfaceElement& o) const {
    require_same_ring(*this, o);
    return SurfaceElement(spec_, expr_ - o.expr_, laurent_ - o.laurent_);
}

SurfaceElement SurfaceElement::operator*(const SurfaceElement& o) const {
    require_same_ring(*this, o);
    return SurfaceElement(spec_, expr_ * o.expr_, laurent_ * o.laurent_);
}

SurfaceElement SurfaceElement::operator-() const { return SurfaceElement(spec_, -expr_, -laurent_); }

SurfaceElement SurfaceElement::scale(const FieldScalar& c) const {
    return SurfaceElement(spec_, expr_.scale(c), laurent_.scale(c));
}

SurfaceElement SurfaceElement::pow(long n) const {
    return SurfaceElement(spec_, expr_.pow(n), laurent_.pow(n));
}

LaurentPoly embed_laurent(const SurfaceElement& el) { return el.laurent(); }

bool elem_equal(const SurfaceElement& a, const SurfaceElement& b) { return a.equals(b); }

namespace {

constexpr int kXi = 0;
const int kYi = var_index(Var::Y);
const int kTi = var_index(Var::T);

// Deterministic rewriting: scan monomials in descending order; on each, reduce
// a y before a t.
MultiPoly rewrite_to_fixpoint(const SurfaceSpec& sp, MultiPoly work) {
    while (true) {
        const ExpVec* target = nullptr;
        bool use_y_rule = false;
        for (auto it = work.terms().rbegin(); it != work.terms().rend(); ++it) {
            const ExpVec& m = it->first;
            if (m[kYi] > 0 && m[kXi] >= sp.d) {
                target = &it->first;
                use_y_rule = true;
                break;
            }
            if (m[kTi] > 0 && m[kXi] >= sp.e) {
                target = &it->first;
                use_y_rule = false;
                break;
            }
        }
        if (!target) return work;
        ExpVec m = *target;
        FieldScalar c = work.coeff(m);
        ExpVec rest = m;
        if (use_y_rule) {
            rest[kXi] -= sp.d;
            rest[kYi] -= 1;
            work = work - MultiPoly::monomial(c, m) + MultiPoly::monomial(c, rest) * sp.P;
        } else {
            rest[kXi] -= sp.e;
            rest[kTi] -= 1;
            work = work - MultiPoly::monomial(c, m) + MultiPoly::monomial(c, rest) * sp.Q;
        }
    }
}

ExpVec wuv_part(const ExpVec& m) {
    ExpVec k{};
    k[var_index(Var::W)] = m[var_index(Var::W)];
    k[var_index(Var::U)] = m[var_index(Var::U)];
    k[var_index(Var::V)] = m[var_index(Var::V)];
    return k;
}

}  // namespace

NormalForm normalize(const SurfaceElement& el) {
    const SurfaceSpec& sp = *el.spec();
    NormalForm nf;
    nf.spec = el.spec();
    nf.expr = rewrite_to_fixpoint(sp, el.expr());

    const Field& f = sp.field;
    for (const auto& [m, c] : nf.expr.terms()) {
        NormalFormStratum& st = nf.strata.try_emplace(wuv_part(m), NormalFormStratum{MultiPoly(f), {}, {}, {}})
                                    .first->second;
        long i = m[kXi], j = m[kYi], l = m[kTi];
        ExpVec zmon = unit_exp(Var::Z, m[var_index(Var::Z)]);
        if (j == 0 && l == 0) {
            ExpVec xz = zmon;
            xz[kXi] = i;
            detail_add_term(st.f0, xz, c);
        } else if (l == 0) {
            auto it = st.a.try_emplace({i, j}, MultiPoly(f)).first;
            detail_add_term(it->second, zmon, c);
        } else if (j == 0) {
            auto it = st.b.try_emplace({i, l}, MultiPoly(f)).first;
            detail_add_term(it->second, zmon, c);
        } else {
            auto it = st.c.try_emplace({i, j, l}, MultiPoly(f)).first;
            detail_add_term(it->second, zmon, c);
        }
    }
    return nf;
}

MultiPoly NormalForm::re_expand() const {
    const Field& f = spec->field;
    MultiPoly acc(f);
    for (const auto& [key, st] : strata) {
        MultiPoly mono = MultiPoly::monomial(FieldScalar::one(f), key);
        MultiPoly part = st.f0;
        for (const auto& [ij, coeff] : st.a) {
            ExpVec m = unit_exp(Var::X, ij.first);
            m[var_index(Var::Y)] = ij.second;
            part = part + coeff * MultiPoly::monomial(FieldScalar::one(f), m);
        }
        for (const auto& [il, coeff] : st.b) {
            ExpVec m = unit_exp(Var::X, il.first);
            m[var_index(Var::T)] = il.second;
            part = part + coeff * MultiPoly::monomial(FieldScalar::one(f), m);
        }
        for (const auto& [ijl, coeff] : st.c) {
            ExpVec m = unit_exp(Var::X, std::get<0>(ijl));
            m[var_index(Var::Y)] = std::get<1>(ijl);
            m[var_index(Var::T)] = std::get<2>(ijl);
            part = part + coeff * MultiPoly::monomial(FieldScalar::one(f), m);
        }
        acc = acc + part * mono;
    }
    return acc;
}

bool NormalForm::within_bounds() const {
    const SurfaceSpec& sp = *spec;
    for (const auto& [m, c] : expr.terms()) {
        (void)c;
        long i = m[kXi], j = m[kYi], l = m[kTi];
        if (j > 0 && l == 0 && i >= sp.d) return false;
        if (l > 0 && j == 0 && i >= sp.e) return false;
        if (j > 0 && l > 0 && i >= std::min(sp.d, sp.e)) return false;
    }
    return true;
}

MultiPoly reduce_mod_x(const SurfaceElement& el) {
    const SurfaceSpec& sp = *el.spec();
    NormalForm nf = normalize(el);
    MultiPoly at0 = nf.expr.coeff_of(Var::X, 0);
    auto res = multivar_divide(at0, {sp.Q0, sp.P0}, MonomialOrder::ideal_reduction());
    return res.remainder;
}

SurfaceElement divide_exact_x(const SurfaceElement& el, long n) {
    if (n < 0) throw SpecError("divide_exact_x needs n >= 0");
    const SurfaceSpec& sp = *el.spec();
    const Field& f = sp.field;

    MultiPoly ptilde = divide_exact_varpow(sp.P - sp.P0, Var::X, 1);
    MultiPoly qtilde = divide_exact_varpow(sp.Q - sp.Q0, Var::X, 1);
    // P(0,z) = x*(x^{d-1} y - ptilde), Q(0,y,z) = x*(x^{e-1} t - qtilde) in B.
    ExpVec xy = unit_exp(Var::X, sp.d - 1);
    xy[var_index(Var::Y)] = 1;
    MultiPoly p0_over_x = MultiPoly::monomial(FieldScalar::one(f), xy) - ptilde;
    ExpVec xt = unit_exp(Var::X, sp.e - 1);
    xt[var_index(Var::T)] = 1;
    MultiPoly q0_over_x = MultiPoly::monomial(FieldScalar::one(f), xt) - qtilde;

    MultiPoly work = el.expr();
    for (long step = 0; step < n; ++step) {
        MultiPoly c0 = work.coeff_of(Var::X, 0);
        MultiPoly rest = divide_exact_varpow(work - c0, Var::X, 1);
        if (c0.is_zero()) {
            work = rest;
            continue;
        }
        auto dv = multivar_divide(c0, {sp.Q0, sp.P0}, MonomialOrder::ideal_reduction());
        if (!dv.remainder.is_zero())
            throw NotDivisibleError("element is not divisible by x; residue mod x: " +
                                    ddsurf::to_string(dv.remainder, NameStyle::Element));
        const MultiPoly& v = dv.quotients[0];  // Q(0,Y,Z) cofactor
        const MultiPoly& u = dv.quotients[1];  // P(0,Z) cofactor
        work = rest + u * p0_over_x + v * q0_over_x;
    }
    return SurfaceElement::make(el.spec(), work);
}

}  // namespace ddsurf
