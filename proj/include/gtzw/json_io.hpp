#pragma once

#include "json.hpp"

#include "gtzw/characters.hpp"
#include "gtzw/gt_graph.hpp"
#include "gtzw/signatures.hpp"
#include "gtzw/zw_measure.hpp"

namespace gtzw {

using Json = nlohmann::json;

Json to_json(const Signature& s);
Signature signature_from_json(const Json& j);

Json to_json(Complex z);
/// Accepts a number or a [re, im] pair.
Complex complex_from_json(const Json& j);

/// {"z":[re,im],"z_prime":...,"w":...,"w_prime":...}
Json to_json(const ZwParams& p);
/// Missing z_prime / w_prime expand to the conjugates (principal shorthand).
ZwParams params_from_json(const Json& j);

/// {"alpha_plus":[...],"beta_plus":[...],"alpha_minus":[...],"beta_minus":[...],
///  "delta_plus":x,"delta_minus":y}
Json to_json(const OmegaPoint& w);
OmegaPoint omega_from_json(const Json& j);

/// Entries sorted lexicographically by signature.
Json to_json(const MeasureTable& t);
Json to_json(const Path& path);

}  // namespace gtzw
