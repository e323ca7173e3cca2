#include "noc/policy.hpp"

#include <map>
#include <mutex>

#include "noc/arbiter.hpp"
#include "noc/routing.hpp"
#include "noc/traffic.hpp"

namespace noc {

namespace {

struct Registry {
    Registry() {
        for (auto& [name, f] : builtin_traffic_policies()) traffic.emplace(name, std::move(f));
        for (auto& [name, f] : builtin_routing_policies()) routing.emplace(name, std::move(f));
        for (auto& [name, f] : builtin_arbitration_policies()) arbitration.emplace(name, std::move(f));
    }

    std::mutex mutex;
    std::map<std::string, TrafficFactory> traffic;
    std::map<std::string, RoutingFactory> routing;
    std::map<std::string, ArbitrationFactory> arbitration;
};

Registry& registry() {
    static Registry instance;
    return instance;
}

template <class Map>
std::vector<std::string> names_of(const Map& map) {
    std::vector<std::string> out;
    for (const auto& [name, factory] : map) out.push_back(name);
    return out;
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& name, const char* what) {
    auto it = map.find(name);
    if (it == map.end()) throw ConfigError(std::string("unknown ") + what + " policy '" + name + "'");
    return it->second;
}

}  // namespace

void register_traffic_policy(const std::string& name, TrafficFactory factory) {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    r.traffic[name] = std::move(factory);
}

void register_routing_policy(const std::string& name, RoutingFactory factory) {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    r.routing[name] = std::move(factory);
}

void register_arbitration_policy(const std::string& name, ArbitrationFactory factory) {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    r.arbitration[name] = std::move(factory);
}

std::shared_ptr<const TrafficPolicy> make_traffic_policy(const nlohmann::json& params) {
    if (!params.is_object()) throw ConfigError("traffic section must be an object");
    const std::string name = params.value("policy", std::string("periodic"));
    TrafficFactory factory;
    {
        auto& r = registry();
        std::lock_guard lock(r.mutex);
        factory = lookup(r.traffic, name, "traffic");
    }
    return factory(params);
}

std::shared_ptr<const RoutingPolicy> make_routing_policy(const std::string& name) {
    RoutingFactory factory;
    {
        auto& r = registry();
        std::lock_guard lock(r.mutex);
        factory = lookup(r.routing, name, "routing");
    }
    return factory();
}

std::shared_ptr<const ArbitrationPolicy> make_arbitration_policy(const std::string& name) {
    ArbitrationFactory factory;
    {
        auto& r = registry();
        std::lock_guard lock(r.mutex);
        factory = lookup(r.arbitration, name, "arbitration");
    }
    return factory();
}

std::vector<std::string> traffic_policy_names() {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    return names_of(r.traffic);
}

std::vector<std::string> routing_policy_names() {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    return names_of(r.routing);
}

std::vector<std::string> arbitration_policy_names() {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    return names_of(r.arbitration);
}

}  // namespace noc
