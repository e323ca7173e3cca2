#pragma once

// Advance phase: consumption at the destination and X-Y forwarding.

#include <string>
#include <utility>
#include <vector>

#include "noc/engine.hpp"

namespace noc {

/// X-Y dimension order: East/West until the destination column, then
/// North/South. Throws ContractViolation when dest == id.
Direction route_direction(const Topology& topo, RouterId id, RouterId dest);

class XyRouting final : public RoutingPolicy {
public:
    std::string_view name() const override { return "xy"; }
    Direction next_hop(const Topology& topo, RouterId id, RouterId dest) const override {
        return route_direction(topo, id, dest);
    }
};

/// Services the front flit of one input buffer, if the snapshot says it has one.
/// Forwarding needs the outgoing channel unused this cycle and the receiving
/// buffer not full at the snapshot; otherwise the buffer is left unserviced.
void advance_channel(NocState& state, const EngineConfig& cfg, RouterId id, Direction dir, CycleEvents& events);

/// advance_channel over the router's priority list, in order.
void advance_router(NocState& state, const EngineConfig& cfg, RouterId id, CycleEvents& events);

std::vector<std::pair<std::string, RoutingFactory>> builtin_routing_policies();

}  // namespace noc
