#pragma once

#include <nlohmann/json.hpp>

#include "minprod/descriptor.hpp"

namespace minprod {

// All machine-readable output uses insertion-ordered JSON so emitted
// documents re-serialize byte-identically after a parse.
using Json = nlohmann::ordered_json;

// Rationals serialize as [numerator, denominator] integer pairs, never as
// decimals; exactness is the engine's contract.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const Bound& b);  // [num, den] or "inf"
Bound bound_from_json(const Json& j);

Json to_json(const Spectrum& s);  // {"entries": [[num, den, mult], ...], "bound": ...}
Spectrum spectrum_from_json(const Json& j);

Json to_json(TriState t);  // true | false | "unknown"
TriState tristate_from_json(const Json& j);

}  // namespace minprod
