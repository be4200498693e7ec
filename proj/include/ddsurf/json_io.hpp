#pragma once

#include <json.hpp>

#include "ddsurf/expmap.hpp"
#include "ddsurf/morphisms.hpp"
#include "ddsurf/stable.hpp"

namespace ddsurf {

using nlohmann::json;

// Field: "Q" or {"Fp": p}.
json field_to_json(const Field& f);
Field field_from_json(const json& j);

// Surface spec: {"field": ..., "d": int, "e": int, "P": "<poly X,Z>", "Q": "<poly X,Y,Z>"}.
json spec_to_json(const SurfaceSpec& spec);
SpecPtr spec_from_json(const json& j);

// Exponential map: {"x": expr, "y": expr, "z": expr, "t": expr, "w": expr?}
// with expressions over x, y, z, t, w, U.
json expmap_to_json(const ExpMap& phi);
ExpMap expmap_from_json(const SpecPtr& spec, const json& j);

// Isomorphism data: {"lambda": "...", "gamma": "...", "delta": "<poly X>",
// "f": "<poly X,Z>", "h": "<poly X,Y,Z>"}.
json isodata_to_json(const IsoData& data);
IsoData isodata_from_json(const Field& field, const json& j);

// Stable certificate; witnesses are serialized over {x, F, G, H, V}.
json certificate_to_json(const StableIsoCertificate& cert);
StableIsoCertificate certificate_from_json(const json& j);

json report_to_json(const Report& rep);
json noniso_to_json(const NonIsoCertificate& cert);
json fiber_to_json(const FiberSolveResult& res);

}  // namespace ddsurf
