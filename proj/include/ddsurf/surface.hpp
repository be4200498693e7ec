#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>

#include "ddsurf/parser.hpp"
#include "ddsurf/poly.hpp"

namespace ddsurf {

/// The data (d, e, P, Q) presenting the surface ring
///   B = k[X,Y,Z,T] / (X^d Y - P(X,Z), X^e T - Q(X,Y,Z)),
/// with P monic in Z and Q monic in Y. r = deg_Z P, s = deg_Y Q.
/// "double" means r >= 2 and s >= 2; "mlc" marks the parameter range where the
/// Makar-Limanov invariant of B is k[x].
struct SurfaceSpec {
    Field field;
    long d = 1, e = 1;
    MultiPoly P, Q;
    long r = 0, s = 0;
    bool is_double = false;
    bool mlc = false;

    // Cached derived data.
    MultiPoly P0, Q0;            // P(0,Z), Q(0,Y,Z)
    LaurentPoly y_image, t_image;  // generator images under the Laurent embedding

    bool same_ring(const SurfaceSpec& o) const {
        return field == o.field && d == o.d && e == o.e && P == o.P && Q == o.Q;
    }
};

using SpecPtr = std::shared_ptr<const SurfaceSpec>;

/// Validates and builds a surface description; throws SpecError when P is not
/// monic in Z, Q is not monic in Y, r or s is 0, or d, e < 1.
SpecPtr surface_new(const Field& field, long d, long e, MultiPoly P, MultiPoly Q);

/// An element of B, or of A = B[w]; U and V are carried as free variables so
/// that exponential-map images live in the same representation. Equality is
/// decided in the Laurent embedding
///   B -> k[x, x^{-1}, z],  y -> P(x,z)/x^d,  t -> Q(x, y, z)/x^e,
/// which is faithful because B is a domain.
class SurfaceElement {
public:
    static SurfaceElement make(SpecPtr spec, MultiPoly expr);
    static SurfaceElement parse(SpecPtr spec, const std::string& text,
                                NameStyle style = NameStyle::Element);
    static SurfaceElement generator(SpecPtr spec, Var v);
    static SurfaceElement constant(SpecPtr spec, FieldScalar c);
    static SurfaceElement from_long(SpecPtr spec, long n);

    const SpecPtr& spec() const { return spec_; }
    const MultiPoly& expr() const { return expr_; }
    const LaurentPoly& laurent() const { return laurent_; }

    bool is_zero() const { return laurent_.is_zero(); }
    bool equals(const SurfaceElement& o) const;

    SurfaceElement operator+(const SurfaceElement& o) const;
    SurfaceElement operator-(const SurfaceElement& o) const;
    SurfaceElement operator*(const SurfaceElement& o) const;
    SurfaceElement operator-() const;
    SurfaceElement scale(const FieldScalar& c) const;
    SurfaceElement pow(long n) const;

    std::string to_string() const { return ddsurf::to_string(expr_, NameStyle::Element); }

private:
    SurfaceElement(SpecPtr spec, MultiPoly expr, LaurentPoly laurent)
        : spec_(std::move(spec)), expr_(std::move(expr)), laurent_(std::move(laurent)) {}

    SpecPtr spec_;
    MultiPoly expr_;
    LaurentPoly laurent_;
};

/// The faithful image in k[x, x^{-1}, z] (plus w, U, V as free variables).
LaurentPoly embed_laurent(const SurfaceElement& el);

bool elem_equal(const SurfaceElement& a, const SurfaceElement& b);

/// One stratum (fixed exponents of w, U, V) of a rewritten element:
///   f0(x,z) + sum a_{ij}(z) x^i y^j   (0 <= i < d, j > 0)
///           + sum b_{il}(z) x^i t^l   (0 <= i < e, l > 0)
///           + sum c_{ijl}(z) x^i y^j t^l   (0 <= i < min(d,e), j,l > 0).
struct NormalFormStratum {
    MultiPoly f0;                                            // k[x,z]
    std::map<std::pair<long, long>, MultiPoly> a;            // (i,j) -> k[z]
    std::map<std::pair<long, long>, MultiPoly> b;            // (i,l) -> k[z]
    std::map<std::tuple<long, long, long>, MultiPoly> c;     // (i,j,l) -> k[z]
};

struct NormalForm {
    SpecPtr spec;
    MultiPoly expr;  // the rewritten polynomial, all strata combined
    std::map<ExpVec, NormalFormStratum> strata;  // key: exponents of W, U, V only

    /// Re-assembles the strata; equals expr by construction.
    MultiPoly re_expand() const;
    /// True when every monomial satisfies the x-exponent bounds above.
    bool within_bounds() const;
    std::string to_string() const { return ddsurf::to_string(expr, NameStyle::Element); }
};

/// Rewrites x^d y -> P(x,z) (y-degree > 0, x-degree >= d) and
/// x^e t -> Q(x,y,z) (t-degree > 0, x-degree >= e) to a fixpoint, reducing y
/// before t on monomials where both apply. Terminates: each step strictly
/// decreases the multiset of per-monomial (t-degree, y-degree) pairs.
NormalForm normalize(const SurfaceElement& el);

/// Canonical image in A/xA = (k[Y,Z]/(P(0,Z), Q(0,Y,Z)))[T,W]: sets x = 0 and
/// reduces by {Q(0,Y,Z), P(0,Z)}; the two leading monomials Y^s, Z^r are
/// coprime, so the remainder is canonical.
MultiPoly reduce_mod_x(const SurfaceElement& el);

/// Exact division by x^n inside A; throws NotDivisibleError when the element
/// is not in x^n A. Each step writes the x-free part c0 as u*P(0,z) + v*Q(0,y,z)
/// and substitutes P(0,z) = x*(x^{d-1}y - ptilde), Q(0,y,z) = x*(x^{e-1}t - qtilde),
/// which makes the x factor explicit with polynomial witnesses.
SurfaceElement divide_exact_x(const SurfaceElement& el, long n);

}  // namespace ddsurf
