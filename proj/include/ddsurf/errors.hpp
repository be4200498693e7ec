#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddsurf {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error in a polynomial expression; carries the byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Arithmetic across different coefficient fields.
class FieldMismatchError : public Error {
public:
    using Error::Error;
};

/// Division by zero in the coefficient field.
class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// Invalid construction data: non-monic defining polynomial, bad parameters,
/// disallowed variables, malformed input files.
class SpecError : public Error {
public:
    using Error::Error;
};

/// divide_exact_x: the element is not in x^n A.
class NotDivisibleError : public Error {
public:
    using Error::Error;
};

/// Quotient-algebra inversion hit a zero divisor.
class NotUnitError : public Error {
public:
    using Error::Error;
};

/// Isomorphism data does not kill a defining relation; carries the residue.
class RelationNotKilledError : public Error {
public:
    RelationNotKilledError(const std::string& relation, const std::string& residue)
        : Error("relation " + relation + " not killed, residue: " + residue), residue_(residue) {}
    const std::string& residue() const { return residue_; }

private:
    std::string residue_;
};

/// An automorphism seed that extends to no endomorphism of the surface.
class SeedNotExtendableError : public Error {
public:
    using Error::Error;
};

/// Runaway intermediate value (x-exponent guard).
class LimitError : public Error {
public:
    using Error::Error;
};

}  // namespace ddsurf
