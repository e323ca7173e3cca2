#include "noc/arbiter.hpp"

#include <array>

namespace noc {

namespace {

void clear_cycle_flags(RouterState& router) {
    for (auto& p : router.ports) {
        p.serviced = false;
        p.used_count = 0;
    }
}

}  // namespace

std::uint8_t blocked_ports(const RouterState& router) {
    std::uint8_t mask = 0;
    for (Direction d : kAllDirections) {
        const PortState& p = router.port(d);
        if (router.connected(d) && !p.is_empty_snap && !p.serviced) mask |= bit(d);
    }
    return mask;
}

void update_priority(RouterState& router) {
    const std::uint8_t blocked = blocked_ports(router);
    if (blocked != 0) {
        std::array<Direction, 5> next{};
        std::size_t k = 0;
        for (Direction d : router.priority_list) {
            if (blocked & bit(d)) next[k++] = d;
        }
        for (Direction d : router.priority_list) {
            if (!(blocked & bit(d))) next[k++] = d;
        }
        router.priority_list = next;
    }
    clear_cycle_flags(router);
}

void update_priority_faulty(RouterState& router) {
    const std::uint8_t blocked = blocked_ports(router);
    std::array<Direction, 5> next{};
    std::size_t k = 0;
    for (Direction d : router.priority_list) {
        if ((blocked & bit(d)) && k < next.size()) next[k++] = d;
    }
    for (Direction d : router.priority_list) {
        if (k < next.size()) next[k++] = d;
    }
    router.priority_list = next;
    clear_cycle_flags(router);
}

std::vector<std::pair<std::string, ArbitrationFactory>> builtin_arbitration_policies() {
    return {{"round_robin", [] { return std::make_shared<RoundRobinArbiter>(); }}};
}

}  // namespace noc
