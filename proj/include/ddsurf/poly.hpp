#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddsurf/field.hpp"
#include "ddsurf/monomial.hpp"

namespace ddsurf {

using TermMap = std::map<ExpVec, FieldScalar, LexLess>;

class LaurentPoly;

/// Sparse polynomial over the fixed variable universe. Canonical storage:
/// no zero coefficients, no duplicate exponent vectors, all exponents >= 0.
class MultiPoly {
public:
    explicit MultiPoly(Field f = Field::rationals()) : field_(f) {}

    static MultiPoly constant(FieldScalar c);
    static MultiPoly from_long(const Field& f, long n) { return constant(FieldScalar::from_long(f, n)); }
    static MultiPoly variable(const Field& f, Var v) { return monomial(FieldScalar::one(f), unit_exp(v)); }
    static MultiPoly monomial(FieldScalar c, const ExpVec& m);

    const Field& field() const { return field_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ExpVec{}); }
    /// The value when constant; nullopt otherwise.
    std::optional<FieldScalar> as_constant() const;

    /// Highest exponent of var; nullopt is the minus-infinity sentinel of the
    /// zero polynomial.
    std::optional<long> degree_in(Var v) const;

    FieldScalar coeff(const ExpVec& m) const;
    /// Coefficient of var^k, as a polynomial in the remaining variables.
    MultiPoly coeff_of(Var v, long k) const;

    VarSet support() const;
    bool supported_on(const VarSet& allowed) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scale(const FieldScalar& c) const;
    MultiPoly pow(long n) const;  // n >= 0

    bool operator==(const MultiPoly& o) const { return field_ == o.field_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

private:
    friend class LaurentPoly;
    friend void detail_add_term(MultiPoly&, const ExpVec&, const FieldScalar&);

    Field field_;
    TermMap terms_;
};

/// Accumulates c on the monomial e, keeping storage canonical (zero results
/// are dropped).
void detail_add_term(MultiPoly& p, const ExpVec& e, const FieldScalar& c);
void detail_add_term(LaurentPoly& p, const ExpVec& e, const FieldScalar& c);

struct DivisionResult {
    std::vector<MultiPoly> quotients;
    MultiPoly remainder;
};

/// Multivariate division with remainder: p = sum q_i * d_i + r, and no term of
/// r is divisible by any divisor's leading monomial under the given order.
DivisionResult multivar_divide(const MultiPoly& p, const std::vector<MultiPoly>& divisors, const MonomialOrder& order);

/// Simultaneous substitution. Variables absent from the map stay fixed.
MultiPoly substitute(const MultiPoly& p, const std::map<Var, MultiPoly>& images);
LaurentPoly substitute_laurent(const MultiPoly& p, const std::map<Var, LaurentPoly>& images);

MultiPoly formal_derivative(const MultiPoly& p, Var v);

/// Exact division by var^n; throws NotDivisibleError when some term has a
/// smaller exponent.
MultiPoly divide_exact_varpow(const MultiPoly& p, Var v, long n);

FieldScalar evaluate(const MultiPoly& p, const std::array<FieldScalar, kNumVars>& point);

struct ExtGcdResult {
    MultiPoly g, u, v;  // g = u*a + v*b, g monic when nonzero
};

/// Extended Euclid in k[var]; both inputs must be univariate in var.
ExtGcdResult ext_gcd_univariate(const MultiPoly& a, const MultiPoly& b, Var var);

/// Division with remainder by a divisor monic in var (other variables allowed
/// in both operands): p = q*d + r with deg_var r < deg_var d.
std::pair<MultiPoly, MultiPoly> divmod_monic(const MultiPoly& p, const MultiPoly& d, Var var);

/// Sparse Laurent polynomial: the X exponent may be negative, every other
/// exponent stays nonnegative. Same canonical-storage rules as MultiPoly.
class LaurentPoly {
public:
    /// Guard against runaway expressions.
    static constexpr long kMaxXExponent = 1000000;

    explicit LaurentPoly(Field f = Field::rationals()) : field_(f) {}

    static LaurentPoly from_multi(const MultiPoly& p);
    static LaurentPoly constant(FieldScalar c);
    static LaurentPoly variable(const Field& f, Var v);
    static LaurentPoly monomial(FieldScalar c, const ExpVec& m);

    const Field& field() const { return field_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Multiply by X^k (k may be negative).
    LaurentPoly mul_xpow(long k) const;

    /// Smallest X exponent; nullopt for zero.
    std::optional<long> ord_x() const;
    /// Largest Z exponent; nullopt for zero.
    std::optional<long> top_z() const;
    /// Largest exponent of v (0 when v is absent); nullopt for zero.
    std::optional<long> degree_in(Var v) const;

    /// Terms whose X exponent equals k.
    LaurentPoly slice_x_order(long k) const;
    /// Terms whose Z exponent equals top_z().
    LaurentPoly slice_top_z() const;

    bool is_polynomial() const;
    MultiPoly to_multi() const;  // throws on negative exponents

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly scale(const FieldScalar& c) const;
    LaurentPoly pow(long n) const;  // n >= 0

    bool operator==(const LaurentPoly& o) const { return field_ == o.field_ && terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

private:
    friend void detail_add_term(LaurentPoly&, const ExpVec&, const FieldScalar&);

    Field field_;
    TermMap terms_;
};

}  // namespace ddsurf
