#pragma once

// JSON forms used by the command line: ambiguity sets as
// {"a":..,"b":..,"mu":..,"d":..,"beta":..|null} and laws as {"points":[..],"probs":[..]}.

#include <string>

#include <json.hpp>

#include "madqueue/ambiguity.hpp"
#include "madqueue/distribution.hpp"

namespace madqueue {

void to_json(nlohmann::json& j, const AmbiguitySet& set);
/// Accepts "mad" as an alias of "d"; "beta" may be absent or null.
void from_json(const nlohmann::json& j, AmbiguitySet& set);

void to_json(nlohmann::json& j, const DiscreteDistribution& law);
void from_json(const nlohmann::json& j, DiscreteDistribution& law);

/// Parses text as JSON, mapping syntax and schema errors to BadParameter.
AmbiguitySet parse_ambiguity(const std::string& text);
DiscreteDistribution parse_distribution(const std::string& text);

}  // namespace madqueue
