#include "noc/routing.hpp"

#include <string>

#include "noc/psn.hpp"

namespace noc {

Direction route_direction(const Topology& topo, RouterId id, RouterId dest) {
    if (dest == id) throw ContractViolation("route_direction called for a flit already at its destination");
    const int here = topo.col_of(id);
    const int there = topo.col_of(dest);
    if (here != there) return there > here ? Direction::East : Direction::West;
    return topo.row_of(dest) > topo.row_of(id) ? Direction::South : Direction::North;
}

void advance_channel(NocState& state, const EngineConfig& cfg, RouterId id, Direction dir, CycleEvents& events) {
    RouterState& router = state.router(id);
    PortState& port = router.port(dir);
    if (!router.connected(dir) || port.is_empty_snap) return;

    RouterEvents& ev = events.routers[static_cast<std::size_t>(id)];
    const Flit front = port.buffer.peek();
    if (front.dest == id) {
        port.buffer.dequeue();
        port.serviced = true;
        record_service(router);
        ++ev.services;
        ++ev.consumptions;
        ++state.consumed;
        return;
    }

    const Direction out = cfg.routing->next_hop(state.topo, id, front.dest);
    const auto next = router.ids[static_cast<std::size_t>(index_of(out))];
    if (!next) {
        throw EngineFault("router " + std::to_string(id) + " routed a flit for " + std::to_string(front.dest) +
                          " off the mesh");
    }
    PortState& channel = router.port(out);
    const Direction in = opposite(out);
    PortState& target = state.router(*next).port(in);

    const bool gate_open = cfg.fault == FaultInjection::SkipFullGate || !target.is_full_snap;
    if (channel.used_count != 0 || !gate_open) {
        port.serviced = false;
        ev.blocked |= bit(dir);
        return;
    }

    port.buffer.dequeue();
    target.buffer.push_unchecked(front);
    ++channel.used_count;
    port.serviced = true;
    record_service(router);
    ++ev.services;
    ev.channels_used |= bit(out);

    RouterEvents& rx = events.routers[static_cast<std::size_t>(*next)];
    if (cfg.check_invariants && (rx.received & bit(in)) != 0) {
        throw EngineFault("buffer " + std::string(to_string(in)) + " of router " + std::to_string(*next) +
                          " received two flits in one cycle");
    }
    rx.received |= bit(in);
}

void advance_router(NocState& state, const EngineConfig& cfg, RouterId id, CycleEvents& events) {
    // Copy: the list must not change under us, and Advance never rewrites it.
    const auto order = state.router(id).priority_list;
    for (Direction d : order) advance_channel(state, cfg, id, d, events);
}

std::vector<std::pair<std::string, RoutingFactory>> builtin_routing_policies() {
    return {{"xy", [] { return std::make_shared<XyRouting>(); }}};
}

}  // namespace noc
