#include "noc/events.hpp"

namespace noc {

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::Boundary: return "boundary";
        case Phase::Generate: return "generate";
        case Phase::Prep: return "prep";
        case Phase::Advance: return "advance";
        case Phase::UpdatePriority: return "update_priority";
        case Phase::UpdateNoise: return "update_noise";
        case Phase::Tick: return "tick";
    }
    return "?";
}

void CycleEvents::reset(std::uint64_t cycle_index, std::size_t router_count) {
    cycle = cycle_index;
    routers.assign(router_count, RouterEvents{});
}

int CycleEvents::injections() const {
    int total = 0;
    for (const auto& r : routers) total += r.injected ? 1 : 0;
    return total;
}

int CycleEvents::consumptions() const {
    int total = 0;
    for (const auto& r : routers) total += r.consumptions;
    return total;
}

int CycleEvents::resistive_events() const {
    int total = 0;
    for (const auto& r : routers) total += r.resistive ? 1 : 0;
    return total;
}

int CycleEvents::inductive_events() const {
    int total = 0;
    for (const auto& r : routers) total += r.inductive ? 1 : 0;
    return total;
}

}  // namespace noc
