#pragma once

#include "ddsurf/expmap.hpp"
#include "ddsurf/morphisms.hpp"
#include "ddsurf/report.hpp"
#include "ddsurf/surface.hpp"

namespace ddsurf {

/// Cofactors of the unit-ideal hypothesis:
///   Q'(0,Y,Z) P'(0,Z) a(Y,Z) + Q(0,Y,Z) b(Y,Z) + P(0,Z) c(Y,Z) = 1,
/// where P' = dP/dZ and Q' = dQ/dY.
struct BezoutCofactors {
    MultiPoly a, b, c;  // polynomials in Y, Z
};

/// Regularity hypotheses for the stable isomorphism:
///   (1) (P(0,Z), P'(0,Z)) k[Z] = k[Z],
///   (2) (P(0,Z), Q(0,Y,Z), Q'(0,Y,Z)) k[Y,Z] = k[Y,Z].
/// Condition (1) is decided by an extended gcd in k[Z]; condition (2) by
/// invertibility of Q'(0,Y,Z) in k[Y,Z]/(P(0,Z), Q(0,Y,Z)). The detail string
/// names the failing stage ("derivative" when the derivative vanishes).
Report check_stable_hypotheses(const SpecPtr& spec);

/// Inverts the image of Q'(0,Y,Z) P'(0,Z) in the rs-dimensional algebra
/// k[Y,Z]/(P(0,Z), Q(0,Y,Z)) with basis {Y^i Z^j : i < s, j < r} by an exact
/// linear solve; b, c are recovered by dividing 1 - Q'P'a by {Q(0), P(0)}.
/// Throws NotUnitError when the image is a zero divisor. The identity is
/// re-verified exactly before returning.
BezoutCofactors bezout_certificate(const SpecPtr& spec);

/// Everything needed to certify B_{d,e}^[1] = B_{d,e-1}^[1]: the slice data
/// over A = B[w] together with re-expression witnesses for the generators.
/// Witness polynomials live over {x, G, F, H, V}, stored on the slots
/// {X, Y, Z, T, W}: G is the Y slot, F the Z slot, H the T slot, V the W slot.
struct StableIsoCertificate {
    SpecPtr source;  // (d, e), e >= 2
    SpecPtr target;  // (d, e-1), same P and Q
    BezoutCofactors cofactors;
    SurfaceElement f, g, h, theta, rho, delta, v;  // elements of A = source[w]
    MultiPoly w_wit, z_wit, y_wit, t_wit;          // witness polynomials
};

/// Builds the certificate, in dependency order:
///   phi   = the canonical exponential map extended to A by w -> w - xU,
///   f     = x^{d+e-1} w + z,
///   theta = (P(x,f) - P(x,z) - x^{d+e-1} P'(0,z) w) / x^{d+e}   (exact),
///   g     = y + x^{e-1} (P'(0,z) w + x theta),
///   rho   = (Q(x,g,f) - Q(x,y,z) - x^{e-1} P'(0,z) Q'(0,y,z) w) / x^e  (exact),
///   h     = P'(0,z) Q'(0,y,z) w + x t + x rho,
///   delta = (1 - Q'(0,y,z) P'(0,z) a(y,z)) / x,
///   v     = (w - a(g,f) h) / x,
/// plus witnesses expressing w, z, y, t as polynomials in {x, f, g, h, v}.
/// Failures (NotDivisibleError, NotUnitError) propagate; nothing is silently
/// repaired.
StableIsoCertificate build_stable_iso(const SpecPtr& spec);

/// The seven certificate checks, every one an exact identity in A:
///   01  P(x,f) = x^d g
///   02  Q(x,g,f) = x^{e-1} h
///   03  Q'(0,y,z) P'(0,z) a(y,z) + x delta = 1
///   04  f, g, h are invariant under the extended canonical map
///   05  phi(v) = v - U
///   06  x v + a(g,f) h = w, and each witness reconstructs its generator
///   07  x, f, g, h kill both relations of the target surface
/// Verification is independent of construction and works on any certificate.
Report verify_certificate(const StableIsoCertificate& cert);

struct CancelDemoReport {
    SpecPtr lower, upper;        // (d,e) and (d,e+1)
    NonIsoCertificate non_iso;   // tuples must differ exactly in e
    Report hypotheses;           // stable hypotheses for the upper surface
    Report certificate;          // verification of the built certificate
    bool pass = false;
};

/// The cancellation counter-example pipeline for (d,e): B_{d,e} and B_{d,e+1}
/// are not isomorphic (tuples differ in the e slot) while a verified stable
/// certificate exhibits B_{d,e+1}^[1] = B_{d,e}^[1].
CancelDemoReport cancellation_demo(const SpecPtr& lower);

}  // namespace ddsurf
