#pragma once

#include <optional>
#include <vector>

#include "ddsurf/report.hpp"
#include "ddsurf/surface.hpp"

namespace ddsurf {

/// Data determining an isomorphism between two surfaces. Derived quantities
/// (tau = gamma^r, nu = lambda^{-d} tau, kappa = nu^s, g = lambda^{-d} f) are
/// always recomputed from these primaries, never stored.
struct IsoData {
    FieldScalar lambda;   // nonzero
    FieldScalar gamma;    // nonzero
    MultiPoly delta;      // k[X]
    MultiPoly f;          // k[X,Z]
    MultiPoly h;          // k[X,Y,Z]
};

/// A homomorphism source -> target recorded by generator images over the
/// target; construction verifies that both defining relations of the source
/// map to zero.
struct Morphism {
    SpecPtr source, target;
    std::map<Var, SurfaceElement> images;  // x, y, z, t
};

/// Applies the morphism to an element of the source.
SurfaceElement apply(const Morphism& psi, const SurfaceElement& el);

struct Tuple4 {
    long d = 0, e = 0, r = 0, s = 0;
    bool operator==(const Tuple4&) const = default;
    std::string to_string() const;
};

/// (d, e, r, s); a complete isomorphism invariant precondition: two surfaces
/// in the mlc range with different tuples are not isomorphic.
Tuple4 invariants_tuple(const SurfaceSpec& spec);

struct NonIsoCertificate {
    Tuple4 left, right;
    std::vector<std::string> differing;  // names among d, e, r, s
    bool certified = false;              // true: provably non-isomorphic
    std::string reason;                  // "tuples differ in ..." / "inconclusive" / refusal
};

/// Certifies non-isomorphism from differing tuples. Requires the mlc flag on
/// both specs; refuses (certified = false, with reason) otherwise. Equal
/// tuples are inconclusive by this test.
NonIsoCertificate certify_non_isomorphic(const SpecPtr& a, const SpecPtr& b);

struct VerifiedIso {
    Morphism forward;      // source -> target
    Morphism inverse;      // target -> source
    IsoData data;
    IsoData inverse_data;
};

/// Builds psi: source -> target with
///   psi(x) = lambda x, psi(z) = gamma z + delta(x),
///   psi(y) = nu y + g(x,z), psi(t) = lambda^{-e}(kappa t + h(x,y,z)),
/// verifies that both source relations die in the target (otherwise throws
/// RelationNotKilledError), then builds and verifies the inverse from the
/// reversed data and checks both compositions are the identity on generators.
VerifiedIso build_iso(const SpecPtr& source, const SpecPtr& target, const IsoData& data);

/// The data of the reverse isomorphism.
IsoData invert_iso_data(const IsoData& data, const SurfaceSpec& source);

struct FiberSolution {
    FieldScalar gamma, delta0;
};

struct FiberSolveResult {
    std::vector<FiberSolution> candidates;
    /// True when the constraints vanish identically: every nonzero gamma works
    /// and candidates only lists the gamma = 1 and gamma = -1 witnesses.
    bool infinite_family = false;
};

/// Solves P_source(0, gamma Z + delta0) = gamma^r P_target(0, Z) over Q:
/// delta0 is determined linearly by gamma from the Z^{r-1} coefficient (this
/// needs char k not dividing r; over F_p the method is refused), the other
/// coefficients give polynomial constraints on gamma, and all rational roots
/// are returned. Complete over Q-points only.
FiberSolveResult solve_fiber_conditions(const SpecPtr& source, const SpecPtr& target);

/// Extends the seed psi(x) = lambda x, psi(z) = lambda2 z + mu2(x) to an
/// automorphism: requires P(lambda X, lambda2 Z + mu2) - lambda2^r P divisible
/// by X^d and the matching Q-compatibility divisible by X^e (else throws
/// SeedNotExtendableError); an endomorphism fixing k[x,z] this way is
/// automatically bijective.
VerifiedIso auto_from_seed(const SpecPtr& spec, const FieldScalar& lambda, const FieldScalar& lambda2,
                           const MultiPoly& mu2);

/// Checks the six structural properties of an automorphism:
///   (i) psi(z) = lambda2 z + mu2(x), so k[x,z] is preserved,
///   (ii) psi(x) = lambda x,
///   (iii) the ideal (x^d, P(x,z)) of k[x,z] is preserved,
///   (iv) psi(y) = nu y + g(x,z), so k[x,y,z] is preserved,
///   (v) the ideal (x^e, Q(x,y,z)) of k[x,y,z] is preserved,
///   (vi) psi(t) = a t + b with a in k*, b in k[x,y,z].
/// Detection works on canonical data (Laurent images and the image in A/xA),
/// so it applies to any morphism with source = target.
Report verify_auto_properties(const Morphism& psi);

/// Rewrites the Danielewski surface x^n v = f(x,z) (f = f0(z) + x f1(x,z),
/// f0 monic of degree >= 2) in the two-relation shape: d = 1, e = n-1,
/// P = f0(Z), Q = Y + f1(X,Z). The result has s = 1, which separates it from
/// every double surface.
SpecPtr danielewski_to_standard(const Field& field, long n, const MultiPoly& f);

}  // namespace ddsurf
