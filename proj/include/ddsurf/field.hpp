#pragma once

#include <gmpxx.h>

#include <string>

#include "ddsurf/errors.hpp"

namespace ddsurf {

/// Coefficient domain: the rationals (characteristic 0) or a prime field F_p.
class Field {
public:
    Field() = default;  // rationals

    static Field rationals() { return Field(); }
    static Field prime(long p);

    long characteristic() const { return p_; }
    bool is_rationals() const { return p_ == 0; }

    bool operator==(const Field&) const = default;

    std::string to_string() const;

private:
    long p_ = 0;  // 0 means Q
};

/// An exact scalar: a rational in lowest terms with positive denominator,
/// or a residue in [0, p) for a prime p. Arithmetic never rounds; division
/// by zero throws.
class FieldScalar {
public:
    FieldScalar() : field_(Field::rationals()) {}

    static FieldScalar zero(const Field& f) { return from_long(f, 0); }
    static FieldScalar one(const Field& f) { return from_long(f, 1); }
    static FieldScalar from_long(const Field& f, long n);
    static FieldScalar from_ratio(const Field& f, long num, long den);
    static FieldScalar from_mpq(mpq_class q);
    /// Parses "3", "-1/4", "12/8" (canonicalized). In F_p, a/b means a * b^{-1}.
    static FieldScalar parse(const Field& f, const std::string& text);

    const Field& field() const { return field_; }

    bool is_zero() const;
    bool is_one() const;
    /// True for rationals < 0; residues are never negative.
    bool is_negative() const;

    FieldScalar operator+(const FieldScalar& o) const;
    FieldScalar operator-(const FieldScalar& o) const;
    FieldScalar operator*(const FieldScalar& o) const;
    FieldScalar operator/(const FieldScalar& o) const;
    FieldScalar operator-() const;
    FieldScalar inverse() const;
    FieldScalar pow(long n) const;  // n may be negative
    FieldScalar abs() const;

    /// In-place kernels for polynomial arithmetic inner loops; the caller has
    /// already checked that the fields agree.
    void add_assign_unchecked(const FieldScalar& o);
    void assign_product_unchecked(const FieldScalar& a, const FieldScalar& b);

    bool operator==(const FieldScalar& o) const;
    bool operator!=(const FieldScalar& o) const { return !(*this == o); }

    /// Rational value; only valid in characteristic 0.
    const mpq_class& rational() const;
    /// Residue in [0, p); only valid in characteristic p.
    long residue() const;

    std::string to_string() const;

private:
    void check_same_field(const FieldScalar& o) const;

    Field field_;
    mpq_class rat_;
    long res_ = 0;
};

}  // namespace ddsurf
