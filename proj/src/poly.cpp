#include "ddsurf/poly.hpp"

#include <algorithm>

namespace ddsurf {

namespace {

void check_field(const Field& a, const Field& b) {
    if (!(a == b))
        throw FieldMismatchError("mixed coefficient fields: " + a.to_string() + " vs " + b.to_string());
}

void check_x_exponent(long e) {
    if (e > LaurentPoly::kMaxXExponent || e < -LaurentPoly::kMaxXExponent)
        throw LimitError("x-exponent " + std::to_string(e) + " exceeds the safety bound");
}

void add_into(TermMap& m, const ExpVec& e, const FieldScalar& c) {
    if (c.is_zero()) return;
    auto it = m.find(e);
    if (it == m.end()) {
        m.emplace(e, c);
    } else {
        it->second.add_assign_unchecked(c);
        if (it->second.is_zero()) m.erase(it);
    }
}

// Accumulates the term-by-term product of two canonical term maps; the scratch
// scalar keeps the inner loop free of heap churn.
void mul_into(TermMap& out, const TermMap& a, const TermMap& b, const Field& field, bool laurent) {
    FieldScalar scratch = FieldScalar::zero(field);
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            scratch.assign_product_unchecked(ca, cb);
            if (scratch.is_zero()) continue;  // possible in characteristic p
            ExpVec m{};
            for (int i = 0; i < kNumVars; ++i) m[i] = ma[i] + mb[i];
            if (laurent) check_x_exponent(m[var_index(Var::X)]);
            auto it = out.find(m);
            if (it == out.end()) {
                out.emplace(m, scratch);
            } else {
                it->second.add_assign_unchecked(scratch);
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
}

// Recursive sparse-Horner evaluation: substituting one variable at a time
// shares the large intermediate products across terms. Variables mapped to
// themselves take a cheap monomial-multiplication path; image powers are
// cached across the whole run.
template <class P>
struct SubstCtx {
    Field field;
    std::array<const P*, kNumVars> images{};
    std::array<std::vector<P>, kNumVars> powers;

    const P& power(int vi, long e) {
        auto& vec = powers[vi];
        if (vec.empty()) {
            vec.push_back(P::constant(FieldScalar::one(field)));
            vec.push_back(*images[vi]);
        }
        while (static_cast<long>(vec.size()) <= e) vec.push_back(vec.back() * vec[1]);
        return vec[static_cast<std::size_t>(e)];
    }
};

template <class P>
P substitute_rec(SubstCtx<P>& ctx, const TermMap& terms, int vi) {
    const Field& f = ctx.field;
    if (terms.empty()) return P(f);
    if (vi == kNumVars) {
        FieldScalar acc = FieldScalar::zero(f);
        for (const auto& [m, c] : terms) {
            (void)m;
            acc = acc + c;
        }
        return P::constant(acc);
    }
    std::map<long, TermMap> groups;
    for (const auto& [m, c] : terms) {
        ExpVec mm = m;
        long e = mm[vi];
        mm[vi] = 0;
        groups[e].emplace(mm, c);
    }
    if (ctx.images[vi] == nullptr) {
        // identity image: re-attach the exponent
        P acc(f);
        for (const auto& [e, group] : groups) {
            P sub = substitute_rec(ctx, group, vi + 1);
            ExpVec mono{};
            mono[vi] = e;
            acc = acc + sub * P::monomial(FieldScalar::one(f), mono);
        }
        return acc;
    }
    P acc(f);
    bool first = true;
    long prev = 0;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        P sub = substitute_rec(ctx, it->second, vi + 1);
        if (first) {
            acc = std::move(sub);
            first = false;
        } else if (prev - it->first == 1) {
            acc = acc * *ctx.images[vi] + sub;
        } else {
            acc = acc * ctx.power(vi, prev - it->first) + sub;
        }
        prev = it->first;
    }
    if (prev > 0) acc = acc * ctx.power(vi, prev);
    return acc;
}

template <class P>
P substitute_generic(const MultiPoly& p, const std::map<Var, P>& images) {
    SubstCtx<P> ctx;
    ctx.field = p.field();
    for (const auto& [v, img] : images) {
        check_field(ctx.field, img.field());
        ctx.images[var_index(v)] = &img;
    }
    return substitute_rec(ctx, p.terms(), 0);
}

}  // namespace

// -- MultiPoly ---------------------------------------------------------------

void detail_add_term(MultiPoly& p, const ExpVec& e, const FieldScalar& c) {
    add_into(p.terms_, e, c);
}

MultiPoly MultiPoly::constant(FieldScalar c) {
    MultiPoly p(c.field());
    detail_add_term(p, ExpVec{}, c);
    return p;
}

MultiPoly MultiPoly::monomial(FieldScalar c, const ExpVec& m) {
    for (int i = 0; i < kNumVars; ++i) {
        if (m[i] < 0) throw SpecError("negative exponent in a polynomial monomial");
    }
    MultiPoly p(c.field());
    detail_add_term(p, m, c);
    return p;
}

std::optional<FieldScalar> MultiPoly::as_constant() const {
    if (terms_.empty()) return FieldScalar::zero(field_);
    if (terms_.size() == 1 && terms_.begin()->first == ExpVec{}) return terms_.begin()->second;
    return std::nullopt;
}

std::optional<long> MultiPoly::degree_in(Var v) const {
    if (terms_.empty()) return std::nullopt;
    long d = 0;
    for (const auto& [m, c] : terms_) {
        (void)c;
        d = std::max(d, m[var_index(v)]);
    }
    return d;
}

FieldScalar MultiPoly::coeff(const ExpVec& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? FieldScalar::zero(field_) : it->second;
}

MultiPoly MultiPoly::coeff_of(Var v, long k) const {
    MultiPoly out(field_);
    for (const auto& [m, c] : terms_) {
        if (m[var_index(v)] == k) {
            ExpVec e = m;
            e[var_index(v)] = 0;
            detail_add_term(out, e, c);
        }
    }
    return out;
}

VarSet MultiPoly::support() const {
    VarSet s;
    for (const auto& [m, c] : terms_) {
        (void)c;
        for (int i = 0; i < kNumVars; ++i) {
            if (m[i] != 0) s = s.with(static_cast<Var>(i));
        }
    }
    return s;
}

bool MultiPoly::supported_on(const VarSet& allowed) const {
    for (Var v : support().to_vector()) {
        if (!allowed.contains(v)) return false;
    }
    return true;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check_field(field_, o.field_);
    MultiPoly out = *this;
    for (const auto& [m, c] : o.terms_) detail_add_term(out, m, c);
    return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(field_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

MultiPoly MultiPoly::scale(const FieldScalar& c) const {
    check_field(field_, c.field());
    MultiPoly out(field_);
    for (const auto& [m, v] : terms_) detail_add_term(out, m, v * c);
    return out;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_field(field_, o.field_);
    MultiPoly out(field_);
    mul_into(out.terms_, terms_, o.terms_, field_, /*laurent=*/false);
    return out;
}

MultiPoly MultiPoly::pow(long n) const {
    if (n < 0) throw SpecError("negative power of a polynomial");
    MultiPoly r = MultiPoly::constant(FieldScalar::one(field_));
    MultiPoly b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        if ((n >>= 1)) b = b * b;
    }
    return r;
}

// -- division ----------------------------------------------------------------

namespace {

const std::pair<const ExpVec, FieldScalar>* leading_term(const TermMap& terms, const MonomialOrder& order) {
    const std::pair<const ExpVec, FieldScalar>* best = nullptr;
    for (const auto& t : terms) {
        if (!best || order.less(best->first, t.first)) best = &t;
    }
    return best;
}

bool monomial_divides(const ExpVec& d, const ExpVec& m) {
    for (int i = 0; i < kNumVars; ++i) {
        if (m[i] < d[i]) return false;
    }
    return true;
}

ExpVec exp_diff(const ExpVec& a, const ExpVec& b) {
    ExpVec r{};
    for (int i = 0; i < kNumVars; ++i) r[i] = a[i] - b[i];
    return r;
}

}  // namespace

DivisionResult multivar_divide(const MultiPoly& p, const std::vector<MultiPoly>& divisors,
                               const MonomialOrder& order) {
    struct Lead {
        ExpVec m;
        FieldScalar c;
    };
    std::vector<Lead> leads;
    leads.reserve(divisors.size());
    for (const auto& d : divisors) {
        check_field(p.field(), d.field());
        if (d.is_zero()) throw SpecError("zero divisor in multivariate division");
        auto* lt = leading_term(d.terms(), order);
        leads.push_back({lt->first, lt->second});
    }

    DivisionResult res{std::vector<MultiPoly>(divisors.size(), MultiPoly(p.field())), MultiPoly(p.field())};
    MultiPoly work = p;
    while (!work.is_zero()) {
        auto* lt = leading_term(work.terms(), order);
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (monomial_divides(leads[i].m, lt->first)) {
                MultiPoly t = MultiPoly::monomial(lt->second / leads[i].c, exp_diff(lt->first, leads[i].m));
                res.quotients[i] = res.quotients[i] + t;
                work = work - t * divisors[i];
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            MultiPoly t = MultiPoly::monomial(lt->second, lt->first);
            res.remainder = res.remainder + t;
            work = work - t;
        }
    }
    return res;
}

std::pair<MultiPoly, MultiPoly> divmod_monic(const MultiPoly& p, const MultiPoly& d, Var var) {
    auto deg = d.degree_in(var);
    if (!deg) throw SpecError("division by zero polynomial");
    auto lead = d.coeff_of(var, *deg).as_constant();
    if (!lead || !lead->is_one()) throw SpecError("divisor is not monic in the given variable");
    auto res = multivar_divide(p, {d}, MonomialOrder::lex({var}));
    return {res.quotients[0], res.remainder};
}

// -- substitution, derivative, exact division --------------------------------

MultiPoly substitute(const MultiPoly& p, const std::map<Var, MultiPoly>& images) {
    return substitute_generic<MultiPoly>(p, images);
}

LaurentPoly substitute_laurent(const MultiPoly& p, const std::map<Var, LaurentPoly>& images) {
    return substitute_generic<LaurentPoly>(p, images);
}

MultiPoly formal_derivative(const MultiPoly& p, Var v) {
    MultiPoly out(p.field());
    int vi = var_index(v);
    for (const auto& [m, c] : p.terms()) {
        if (m[vi] == 0) continue;
        ExpVec e = m;
        e[vi] -= 1;
        detail_add_term(out, e, c * FieldScalar::from_long(p.field(), m[vi]));
    }
    return out;
}

MultiPoly divide_exact_varpow(const MultiPoly& p, Var v, long n) {
    MultiPoly out(p.field());
    int vi = var_index(v);
    for (const auto& [m, c] : p.terms()) {
        if (m[vi] < n)
            throw NotDivisibleError(std::string("polynomial not divisible by ") + kVarNames[vi] + "^" +
                                    std::to_string(n));
        ExpVec e = m;
        e[vi] -= n;
        detail_add_term(out, e, c);
    }
    return out;
}

FieldScalar evaluate(const MultiPoly& p, const std::array<FieldScalar, kNumVars>& point) {
    FieldScalar acc = FieldScalar::zero(p.field());
    for (const auto& [m, c] : p.terms()) {
        FieldScalar t = c;
        for (int i = 0; i < kNumVars; ++i) {
            if (m[i] != 0) t = t * point[i].pow(m[i]);
        }
        acc = acc + t;
    }
    return acc;
}

ExtGcdResult ext_gcd_univariate(const MultiPoly& a, const MultiPoly& b, Var var) {
    VarSet allowed{var};
    if (!a.supported_on(allowed) || !b.supported_on(allowed))
        throw SpecError("extended gcd requires univariate inputs");
    const Field& f = a.field();
    check_field(f, b.field());
    MultiPoly r0 = a, r1 = b;
    MultiPoly u0 = MultiPoly::from_long(f, 1), u1 = MultiPoly(f);
    MultiPoly v0 = MultiPoly(f), v1 = MultiPoly::from_long(f, 1);
    MonomialOrder ord = MonomialOrder::lex({var});
    while (!r1.is_zero()) {
        auto res = multivar_divide(r0, {r1}, ord);
        r0 = r1;
        r1 = res.remainder;
        MultiPoly q = res.quotients[0];
        MultiPoly un = u0 - q * u1;
        u0 = u1;
        u1 = un;
        MultiPoly vn = v0 - q * v1;
        v0 = v1;
        v1 = vn;
    }
    if (r0.is_zero()) return {MultiPoly(f), MultiPoly(f), MultiPoly(f)};
    FieldScalar lc = r0.coeff_of(var, *r0.degree_in(var)).as_constant().value();
    FieldScalar inv = lc.inverse();
    return {r0.scale(inv), u0.scale(inv), v0.scale(inv)};
}

// -- LaurentPoly --------------------------------------------------------------

void detail_add_term(LaurentPoly& p, const ExpVec& e, const FieldScalar& c) {
    add_into(p.terms_, e, c);
}

LaurentPoly LaurentPoly::from_multi(const MultiPoly& p) {
    LaurentPoly out(p.field());
    out.terms_ = p.terms();
    return out;
}

LaurentPoly LaurentPoly::constant(FieldScalar c) {
    LaurentPoly p(c.field());
    detail_add_term(p, ExpVec{}, c);
    return p;
}

LaurentPoly LaurentPoly::variable(const Field& f, Var v) {
    return monomial(FieldScalar::one(f), unit_exp(v));
}

LaurentPoly LaurentPoly::monomial(FieldScalar c, const ExpVec& m) {
    for (int i = 0; i < kNumVars; ++i) {
        if (i != var_index(Var::X) && m[i] < 0)
            throw SpecError(std::string("negative exponent of ") + kVarNames[i] + " in a Laurent monomial");
    }
    check_x_exponent(m[var_index(Var::X)]);
    LaurentPoly p(c.field());
    detail_add_term(p, m, c);
    return p;
}

LaurentPoly LaurentPoly::mul_xpow(long k) const {
    LaurentPoly out(field_);
    int xi = var_index(Var::X);
    for (const auto& [m, c] : terms_) {
        ExpVec e = m;
        e[xi] += k;
        check_x_exponent(e[xi]);
        out.terms_.emplace(e, c);
    }
    return out;
}

std::optional<long> LaurentPoly::ord_x() const {
    if (terms_.empty()) return std::nullopt;
    long o = terms_.begin()->first[var_index(Var::X)];
    for (const auto& [m, c] : terms_) {
        (void)c;
        o = std::min(o, m[var_index(Var::X)]);
    }
    return o;
}

std::optional<long> LaurentPoly::top_z() const {
    if (terms_.empty()) return std::nullopt;
    long o = terms_.begin()->first[var_index(Var::Z)];
    for (const auto& [m, c] : terms_) {
        (void)c;
        o = std::max(o, m[var_index(Var::Z)]);
    }
    return o;
}

std::optional<long> LaurentPoly::degree_in(Var v) const {
    if (terms_.empty()) return std::nullopt;
    long o = terms_.begin()->first[var_index(v)];
    for (const auto& [m, c] : terms_) {
        (void)c;
        o = std::max(o, m[var_index(v)]);
    }
    return o;
}

LaurentPoly LaurentPoly::slice_x_order(long k) const {
    LaurentPoly out(field_);
    for (const auto& [m, c] : terms_) {
        if (m[var_index(Var::X)] == k) out.terms_.emplace(m, c);
    }
    return out;
}

LaurentPoly LaurentPoly::slice_top_z() const {
    auto tz = top_z();
    LaurentPoly out(field_);
    if (!tz) return out;
    for (const auto& [m, c] : terms_) {
        if (m[var_index(Var::Z)] == *tz) out.terms_.emplace(m, c);
    }
    return out;
}

bool LaurentPoly::is_polynomial() const {
    for (const auto& [m, c] : terms_) {
        (void)c;
        if (m[var_index(Var::X)] < 0) return false;
    }
    return true;
}

MultiPoly LaurentPoly::to_multi() const {
    if (!is_polynomial()) throw SpecError("Laurent value has negative x-exponents");
    MultiPoly out(field_);
    for (const auto& [m, c] : terms_) detail_add_term(out, m, c);
    return out;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    check_field(field_, o.field_);
    LaurentPoly out = *this;
    for (const auto& [m, c] : o.terms_) detail_add_term(out, m, c);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out(field_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

LaurentPoly LaurentPoly::scale(const FieldScalar& c) const {
    check_field(field_, c.field());
    LaurentPoly out(field_);
    for (const auto& [m, v] : terms_) detail_add_term(out, m, v * c);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    check_field(field_, o.field_);
    LaurentPoly out(field_);
    mul_into(out.terms_, terms_, o.terms_, field_, /*laurent=*/true);
    return out;
}

LaurentPoly LaurentPoly::pow(long n) const {
    if (n < 0) throw SpecError("negative power of a Laurent value");
    LaurentPoly r = LaurentPoly::constant(FieldScalar::one(field_));
    LaurentPoly b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        if ((n >>= 1)) b = b * b;
    }
    return r;
}

}  // namespace ddsurf
