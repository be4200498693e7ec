#pragma once

#include <map>

#include "ddsurf/report.hpp"
#include "ddsurf/surface.hpp"

namespace ddsurf {

/// A ring homomorphism phi: B -> B[U] (or A -> A[U] when a w-image is present),
/// recorded by generator images. Exponential-map axioms:
///   (i)  evaluating U at 0 is the identity,
///   (ii) phi_V . phi_U = phi_{U+V}.
struct ExpMap {
    SpecPtr spec;
    std::map<Var, SurfaceElement> images;  // keys X, Y, Z, T, and W when extended

    bool extended() const { return images.count(Var::W) != 0; }
    const SurfaceElement& image(Var v) const { return images.at(v); }
};

/// The canonical exponential map:
///   x -> x,  z -> z + x^{d+e} U,
///   y -> P(x, z + x^{d+e}U)/x^d,  t -> Q(x, phi(y), phi(z))/x^e,
/// where both divisions are exact polynomial divisions. Verifies the axioms
/// before returning; a failure indicates an internal arithmetic bug.
ExpMap expmap_canonical(const SpecPtr& spec);

/// Extends the canonical map to A = B[w] by w -> w - x U; re-verifies.
ExpMap extend_to_A(const ExpMap& phi);

/// Applies the map by substitution (U and V stay fixed; a missing w-image
/// leaves w fixed).
SurfaceElement apply(const ExpMap& phi, const SurfaceElement& el);

/// The Laurent image of phi(expr), computed directly in the embedding domain.
/// Large expressions collapse there (only x, z, w, U, V survive), so this is
/// the form certificate checks use.
LaurentPoly apply_laurent(const ExpMap& phi, const MultiPoly& expr);

/// Checks axiom (i) on every generator, relation preservation, and axiom (ii)
/// as phi_V(phi_U(g)) = phi_{U+V}(g) for each generator g. A homomorphism is
/// determined by generator images, so the generator check decides the axiom.
Report verify_expmap(const ExpMap& phi);

struct InvariantReport {
    SurfaceElement element;
    bool is_invariant = false;
    long u_degree = 0;  // degree of U in phi(element)
};

InvariantReport is_invariant(const ExpMap& phi, const SurfaceElement& el);

}  // namespace ddsurf
