#include "ddsurf/field.hpp"

#include <cstdlib>

namespace ddsurf {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q) {
        if (p % q == 0) return false;
    }
    return true;
}

long mod_norm(long v, long p) {
    long r = v % p;
    return r < 0 ? r + p : r;
}

long mul_mod(long a, long b, long p) {
    // p < 2^31, so the product fits in 64 bits.
    return static_cast<long>((static_cast<__int128>(a) * b) % p);
}

long pow_mod(long a, long n, long p) {
    long r = 1 % p;
    long b = mod_norm(a, p);
    while (n > 0) {
        if (n & 1) r = mul_mod(r, b, p);
        b = mul_mod(b, b, p);
        n >>= 1;
    }
    return r;
}

long inv_mod(long a, long p) {
    if (mod_norm(a, p) == 0) throw DivisionByZeroError("division by zero in F_" + std::to_string(p));
    return pow_mod(a, p - 2, p);
}

}  // namespace

Field Field::prime(long p) {
    if (p >= (1L << 31)) throw SpecError("prime characteristic too large: " + std::to_string(p));
    if (!is_prime(p)) throw SpecError("characteristic must be prime, got " + std::to_string(p));
    Field f;
    f.p_ = p;
    return f;
}

std::string Field::to_string() const {
    return p_ == 0 ? "Q" : "F" + std::to_string(p_);
}

FieldScalar FieldScalar::from_long(const Field& f, long n) {
    FieldScalar s;
    s.field_ = f;
    if (f.is_rationals()) {
        s.rat_ = mpq_class(n);
    } else {
        s.res_ = mod_norm(n, f.characteristic());
    }
    return s;
}

FieldScalar FieldScalar::from_ratio(const Field& f, long num, long den) {
    if (den == 0) throw DivisionByZeroError("zero denominator");
    FieldScalar s;
    s.field_ = f;
    if (f.is_rationals()) {
        s.rat_ = mpq_class(num, den);
        s.rat_.canonicalize();
    } else {
        long p = f.characteristic();
        s.res_ = mul_mod(mod_norm(num, p), inv_mod(den, p), p);
    }
    return s;
}

FieldScalar FieldScalar::from_mpq(mpq_class q) {
    FieldScalar s;
    s.field_ = Field::rationals();
    q.canonicalize();
    s.rat_ = std::move(q);
    return s;
}

FieldScalar FieldScalar::parse(const Field& f, const std::string& text) {
    auto slash = text.find('/');
    std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!valid_int(num) || !valid_int(den)) throw SpecError("invalid scalar literal: '" + text + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw DivisionByZeroError("zero denominator in '" + text + "'");
    if (f.is_rationals()) {
        FieldScalar s;
        s.field_ = f;
        s.rat_ = mpq_class(n, d);
        s.rat_.canonicalize();
        return s;
    }
    long p = f.characteristic();
    mpz_class pz(p);
    mpz_class nr = n % pz, dr = d % pz;
    long nl = mod_norm(nr.get_si(), p);
    long dl = mod_norm(dr.get_si(), p);
    if (dl == 0)
        throw SpecError("coefficient '" + text + "' not in " + f.to_string() + " (denominator divisible by " +
                        std::to_string(p) + ")");
    FieldScalar s;
    s.field_ = f;
    s.res_ = mul_mod(nl, inv_mod(dl, p), p);
    return s;
}

bool FieldScalar::is_zero() const {
    return field_.is_rationals() ? rat_ == 0 : res_ == 0;
}

bool FieldScalar::is_one() const {
    return field_.is_rationals() ? rat_ == 1 : res_ == 1 % field_.characteristic();
}

bool FieldScalar::is_negative() const {
    return field_.is_rationals() && rat_ < 0;
}

void FieldScalar::check_same_field(const FieldScalar& o) const {
    if (!(field_ == o.field_))
        throw FieldMismatchError("mixed coefficient fields: " + field_.to_string() + " vs " + o.field_.to_string());
}

FieldScalar FieldScalar::operator+(const FieldScalar& o) const {
    check_same_field(o);
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.rat_ = rat_ + o.rat_;
    else
        s.res_ = mod_norm(res_ + o.res_, field_.characteristic());
    return s;
}

FieldScalar FieldScalar::operator-(const FieldScalar& o) const {
    check_same_field(o);
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.rat_ = rat_ - o.rat_;
    else
        s.res_ = mod_norm(res_ - o.res_, field_.characteristic());
    return s;
}

FieldScalar FieldScalar::operator*(const FieldScalar& o) const {
    check_same_field(o);
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.rat_ = rat_ * o.rat_;
    else
        s.res_ = mul_mod(res_, o.res_, field_.characteristic());
    return s;
}

FieldScalar FieldScalar::operator/(const FieldScalar& o) const {
    return *this * o.inverse();
}

FieldScalar FieldScalar::operator-() const {
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.rat_ = -rat_;
    else
        s.res_ = mod_norm(-res_, field_.characteristic());
    return s;
}

FieldScalar FieldScalar::inverse() const {
    FieldScalar s;
    s.field_ = field_;
    if (field_.is_rationals()) {
        if (rat_ == 0) throw DivisionByZeroError("division by zero in Q");
        s.rat_ = 1 / rat_;
    } else {
        s.res_ = inv_mod(res_, field_.characteristic());
    }
    return s;
}

FieldScalar FieldScalar::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    FieldScalar r = one(field_);
    FieldScalar b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

FieldScalar FieldScalar::abs() const {
    return is_negative() ? -*this : *this;
}

void FieldScalar::add_assign_unchecked(const FieldScalar& o) {
    if (field_.is_rationals())
        mpq_add(rat_.get_mpq_t(), rat_.get_mpq_t(), o.rat_.get_mpq_t());
    else
        res_ = mod_norm(res_ + o.res_, field_.characteristic());
}

void FieldScalar::assign_product_unchecked(const FieldScalar& a, const FieldScalar& b) {
    field_ = a.field_;
    if (field_.is_rationals())
        mpq_mul(rat_.get_mpq_t(), a.rat_.get_mpq_t(), b.rat_.get_mpq_t());
    else
        res_ = mul_mod(a.res_, b.res_, field_.characteristic());
}

bool FieldScalar::operator==(const FieldScalar& o) const {
    if (!(field_ == o.field_)) return false;
    return field_.is_rationals() ? rat_ == o.rat_ : res_ == o.res_;
}

const mpq_class& FieldScalar::rational() const {
    if (!field_.is_rationals()) throw FieldMismatchError("not a rational scalar");
    return rat_;
}

long FieldScalar::residue() const {
    if (field_.is_rationals()) throw FieldMismatchError("not a prime-field scalar");
    return res_;
}

std::string FieldScalar::to_string() const {
    if (field_.is_rationals()) return rat_.get_str();
    return std::to_string(res_);
}

}  // namespace ddsurf
