#pragma once

#include "ddsurf/report.hpp"
#include "ddsurf/surface.hpp"

namespace ddsurf {

/// A homogeneous slice of a Laurent image: a single x-order slice (for the
/// graded ring of the x-adic filtration on B, which is D) or a single
/// z-degree slice (for the graded ring of the z-filtration on D, which is C).
/// It is identified with an element of D resp. C through that ring's own
/// Laurent embedding, so comparisons and products are plain Laurent algebra.
struct GradedElement {
    LaurentPoly slice;

    GradedElement operator*(const GradedElement& o) const { return {slice * o.slice}; }
    GradedElement pow(long n) const { return {slice.pow(n)}; }
    bool operator==(const GradedElement& o) const { return slice == o.slice; }
};

/// Filtration degree on B: B_n = B intersect (sum over i >= -n of k[z] x^i),
/// so the degree of a nonzero element is -ord_x of its Laurent image.
/// x, z, y, t have degrees -1, 0, d, ds+e.
long filt_degree_B(const SurfaceElement& el);

/// Leading form in gr(B) = D: the slice at the minimal x-order.
GradedElement rho_B(const SurfaceElement& el);

/// Filtration degree on D: D_n collects z-degrees <= n, so the degree is the
/// top z-degree of the Laurent image. z, x, y, t have degrees 1, 0, r, rs.
long filt_degree_D(const SurfaceElement& el);

/// Leading form in gr(D) = C: the slice at the maximal z-degree.
GradedElement rho_D(const SurfaceElement& el);

/// D = k[X,Y,Z,T]/(X^d Y - P(0,Z), X^e T - Y^s).
SpecPtr graded_spec_D(const SpecPtr& spec);

/// C = k[X,Y,Z,T]/(X^d Y - Z^r, X^e T - Y^s).
SpecPtr graded_spec_C(const SpecPtr& spec);

/// Checks the graded relations on generators:
///   rho_B(x)^d rho_B(y) = P(0, z~),  rho_B(x)^e rho_B(t) = rho_B(y)^s  in D,
///   rho_D(x~)^d rho_D(y~) = z-^r,    rho_D(x~)^e rho_D(t~) = rho_D(y~)^s in C,
/// the expected filtration degrees of the generators, and multiplicativity of
/// rho_B on random pairs.
Report verify_graded_relations(const SpecPtr& spec, unsigned rng_seed = 20240901);

}  // namespace ddsurf
