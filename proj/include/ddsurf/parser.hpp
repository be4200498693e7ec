#pragma once

#include <string>

#include "ddsurf/poly.hpp"

namespace ddsurf {

/// How variables are spelled in text.
///   Upper:   canonical X Y Z T W U V; lowercase x y z t w accepted on input.
///   Element: ring elements; prints x y z t w (U, V stay uppercase).
///   Witness: expressions over the invariant-subring generators and the
///            slice variable: x, G (Y slot), F (Z slot), H (T slot), V (W slot).
enum class NameStyle { Upper, Element, Witness };

/// Grammar: `+ - * ^` with `^` tightest, then `*`, then `+`/`-`;
/// parentheses; integer and rational literals (`3`, `-1/4`); juxtaposition is
/// not multiplication. Variables outside `allowed` are rejected.
MultiPoly parse_poly(const std::string& text, const Field& field, const VarSet& allowed,
                     NameStyle style = NameStyle::Upper);

/// Same grammar, but the X exponent may be negative (e.g. `X^-2`).
LaurentPoly parse_laurent(const std::string& text, const Field& field, const VarSet& allowed,
                          NameStyle style = NameStyle::Upper);

/// Terms in descending lex order; parse_poly(to_string(p)) == p.
std::string to_string(const MultiPoly& p, NameStyle style = NameStyle::Upper);
std::string to_string(const LaurentPoly& p, NameStyle style = NameStyle::Upper);

}  // namespace ddsurf
