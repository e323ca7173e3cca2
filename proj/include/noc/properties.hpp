#pragma once

// Named property families checked by the explorer.

#include <string>
#include <vector>

#include "noc/explorer.hpp"

namespace noc {

/// No router ever generates a flit addressed to itself.
Property no_self_generation();

/// Router `src` can generate a flit for `dst`.
Property pair_generation(RouterId src, RouterId dst);

/// Every buffer holds at most `capacity` flits at every phase boundary.
Property buffer_bound(int capacity);

/// Every outgoing channel carries at most one flit per cycle.
Property channel_used_once();

/// Each priority list holds all five directions exactly once.
Property priority_list_permutation();

/// Family names accepted by properties_for().
std::vector<std::string> property_family_names();

/// Expands family names ("no_self_gen", "all_pairs", "buffer_bound",
/// "channel_once", "priority_list") for the given config. Throws ConfigError.
std::vector<Property> properties_for(const EngineConfig& cfg, const std::vector<std::string>& families);

/// True when the verdict is the expected outcome for its property kind.
bool passed(const Property& property, Verdict verdict);

}  // namespace noc
