#pragma once

// Pluggable traffic, routing and arbitration policies, looked up by name.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "noc/draws.hpp"
#include "noc/mesh.hpp"

namespace noc {

class TrafficPolicy {
public:
    virtual ~TrafficPolicy() = default;
    virtual std::string_view name() const = 0;

    /// Called once per router in the Generate phase. May update the router's
    /// generator counters; returns the flit to append to the Local buffer.
    virtual std::optional<Flit> generate(RouterId id, const NocState& state, TrafficCounters& counters,
                                         Draws& draws) const = 0;

    /// Period of the policy's dependence on the clock, 0 when it ignores the clock.
    virtual int clock_period() const { return 0; }

    /// Whether generate() reads or writes the per-router TrafficCounters.
    virtual bool uses_counters() const { return false; }

    virtual void validate(const Topology&) const {}
};

class RoutingPolicy {
public:
    virtual ~RoutingPolicy() = default;
    virtual std::string_view name() const = 0;
    /// Outgoing compass direction for a flit at `id` headed to `dest != id`.
    virtual Direction next_hop(const Topology& topo, RouterId id, RouterId dest) const = 0;
};

class ArbitrationPolicy {
public:
    virtual ~ArbitrationPolicy() = default;
    virtual std::string_view name() const = 0;
    /// Recomputes the priority list after Advance and clears per-cycle flags.
    virtual void update(RouterState& router) const = 0;
};

using TrafficFactory = std::function<std::shared_ptr<const TrafficPolicy>(const nlohmann::json& params)>;
using RoutingFactory = std::function<std::shared_ptr<const RoutingPolicy>()>;
using ArbitrationFactory = std::function<std::shared_ptr<const ArbitrationPolicy>()>;

void register_traffic_policy(const std::string& name, TrafficFactory factory);
void register_routing_policy(const std::string& name, RoutingFactory factory);
void register_arbitration_policy(const std::string& name, ArbitrationFactory factory);

/// `params` is the traffic section; its "policy" key selects the factory.
std::shared_ptr<const TrafficPolicy> make_traffic_policy(const nlohmann::json& params);
std::shared_ptr<const RoutingPolicy> make_routing_policy(const std::string& name);
std::shared_ptr<const ArbitrationPolicy> make_arbitration_policy(const std::string& name);

std::vector<std::string> traffic_policy_names();
std::vector<std::string> routing_policy_names();
std::vector<std::string> arbitration_policy_names();

}  // namespace noc
