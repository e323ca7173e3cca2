#pragma once

// Round-robin priority update.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "noc/engine.hpp"

namespace noc {

/// Ports that held a flit at the snapshot but were not serviced, by Direction bit.
std::uint8_t blocked_ports(const RouterState& router);

/// Blocked ports move to the front of the priority list keeping their previous
/// relative order; every other port follows, also in previous order. Then the
/// serviced flags and channel usage counters are cleared for the next cycle.
void update_priority(RouterState& router);

/// Defective variant: prepends blocked ports without removing them from the
/// tail, so the list loses its permutation property once anything blocks.
void update_priority_faulty(RouterState& router);

class RoundRobinArbiter final : public ArbitrationPolicy {
public:
    std::string_view name() const override { return "round_robin"; }
    void update(RouterState& router) const override { update_priority(router); }
};

std::vector<std::pair<std::string, ArbitrationFactory>> builtin_arbitration_policies();

}  // namespace noc
