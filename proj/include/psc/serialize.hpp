#pragma once

// Structured (JSON) rendering of the toolkit's values. Rationals are always
// numerator/denominator pairs; integers that do not fit in 64 bits are
// emitted as decimal strings.

#include <json.hpp>

#include "psc/analysis.hpp"
#include "psc/lottery.hpp"
#include "psc/preferences.hpp"

namespace psc {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
/// [{"alternative": "a", "num": 5, "den": 12}, ...] over the whole universe.
Json to_json(const Lottery& p);
Json to_json(const Profile& profile);
Json to_json(SdVerdict v);

Json to_json(const Profile& profile, const Lottery& p, const EfficiencyVerdict& v);
Json to_json(const ManipulationWitness& w);
Json to_json(const SymmetryWitness& w);

}  // namespace psc
