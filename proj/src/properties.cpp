#include "noc/properties.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

namespace noc {

Property no_self_generation() {
    return {"no_self_gen", Property::Kind::Invariant, [](const Observation& o) {
                if (o.phase != Phase::Generate || o.events == nullptr) return true;
                for (std::size_t id = 0; id < o.events->routers.size(); ++id) {
                    const auto& dest = o.events->routers[id].injected;
                    if (dest && *dest == static_cast<RouterId>(id)) return false;
                }
                return true;
            }};
}

Property pair_generation(RouterId src, RouterId dst) {
    return {fmt::format("gen({}->{})", src, dst), Property::Kind::Reachable, [src, dst](const Observation& o) {
                if (o.phase != Phase::Generate || o.events == nullptr) return false;
                const auto& dest = o.events->routers[static_cast<std::size_t>(src)].injected;
                return dest && *dest == dst;
            }};
}

Property buffer_bound(int capacity) {
    return {"buffer_bound", Property::Kind::Invariant, [capacity](const Observation& o) {
                for (const auto& r : o.state.routers) {
                    for (const auto& p : r.ports) {
                        if (p.buffer.size() > capacity) return false;
                    }
                }
                return true;
            }};
}

Property channel_used_once() {
    return {"channel_once", Property::Kind::Invariant, [](const Observation& o) {
                for (const auto& r : o.state.routers) {
                    for (const auto& p : r.ports) {
                        if (p.used_count > 1) return false;
                    }
                }
                return true;
            }};
}

Property priority_list_permutation() {
    return {"priority_list", Property::Kind::Invariant, [](const Observation& o) {
                for (const auto& r : o.state.routers) {
                    std::array<int, 5> seen{};
                    for (Direction d : r.priority_list) {
                        const int i = index_of(d);
                        if (i < 0 || i >= 5 || seen[static_cast<std::size_t>(i)]++ > 0) return false;
                    }
                }
                return true;
            }};
}

std::vector<std::string> property_family_names() {
    return {"no_self_gen", "all_pairs", "buffer_bound", "channel_once", "priority_list"};
}

std::vector<Property> properties_for(const EngineConfig& cfg, const std::vector<std::string>& families) {
    std::vector<Property> out;
    const Topology topo = cfg.topology();
    for (const auto& f : families) {
        if (f == "no_self_gen") {
            out.push_back(no_self_generation());
        } else if (f == "all_pairs") {
            for (RouterId i = 0; i < topo.size(); ++i) {
                for (RouterId j = 0; j < topo.size(); ++j) {
                    if (i != j) out.push_back(pair_generation(i, j));
                }
            }
        } else if (f == "buffer_bound") {
            out.push_back(buffer_bound(cfg.buffer_size));
        } else if (f == "channel_once") {
            out.push_back(channel_used_once());
        } else if (f == "priority_list") {
            out.push_back(priority_list_permutation());
        } else {
            throw ConfigError(fmt::format("unknown property family '{}'", f));
        }
    }
    return out;
}

bool passed(const Property& property, Verdict verdict) {
    return property.kind == Property::Kind::Invariant ? verdict == Verdict::Holds : verdict == Verdict::Reachable;
}

}  // namespace noc
