#pragma once

// Flit-injection policies for the Generate phase.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noc/policy.hpp"

namespace noc {

struct PeriodicPolicy {
    int duty_on = 3;
    int period = 10;
    void validate() const;
};

struct BurstyPolicy {
    int burst_min = 10;
    int burst_max = 100;
    int sleep_min = 200;
    int sleep_max = 400;
    void validate() const;
};

/// Draws d on [0, router_count - 2] and shifts it past `id`, so the result is
/// uniform over every router except `id`.
RouterId uniform_dest_excluding_self(RouterId id, int router_count, Draws& draws);

/// Injects during the first duty_on cycles of every period unless the Local
/// buffer is full. A skipped injection is dropped, not deferred.
std::optional<Flit> periodic_inject(RouterId id, std::uint64_t clk, const PeriodicPolicy& policy, Draws& draws,
                                    bool local_full, int router_count);

/// Burst/sleep generator. A full Local buffer stalls the counters.
std::optional<Flit> bursty_inject(RouterId id, const BurstyPolicy& policy, TrafficCounters& counters, Draws& draws,
                                  bool local_full, int router_count);

class NoTraffic final : public TrafficPolicy {
public:
    std::string_view name() const override { return "none"; }
    std::optional<Flit> generate(RouterId, const NocState&, TrafficCounters&, Draws&) const override {
        return std::nullopt;
    }
};

class PeriodicTraffic final : public TrafficPolicy {
public:
    explicit PeriodicTraffic(PeriodicPolicy policy = {});
    std::string_view name() const override { return "periodic"; }
    std::optional<Flit> generate(RouterId id, const NocState& state, TrafficCounters& counters,
                                 Draws& draws) const override;
    int clock_period() const override { return policy_.period; }
    const PeriodicPolicy& policy() const { return policy_; }

private:
    PeriodicPolicy policy_;
};

/// Periodic duty cycle with a fixed destination per router; draws nothing.
///
/// Destinations come from an explicit list, or else from (id + shift) mod n^2.
class FixedTraffic final : public TrafficPolicy {
public:
    FixedTraffic(PeriodicPolicy duty, int shift);
    FixedTraffic(PeriodicPolicy duty, std::vector<RouterId> destinations);

    std::string_view name() const override { return "fixed"; }
    std::optional<Flit> generate(RouterId id, const NocState& state, TrafficCounters& counters,
                                 Draws& draws) const override;
    int clock_period() const override { return duty_.period; }
    void validate(const Topology& topo) const override;

    RouterId destination(RouterId id, int router_count) const;

private:
    PeriodicPolicy duty_;
    int shift_ = 1;
    std::vector<RouterId> destinations_;
};

class BurstyTraffic final : public TrafficPolicy {
public:
    explicit BurstyTraffic(BurstyPolicy policy = {});
    std::string_view name() const override { return "bursty"; }
    bool uses_counters() const override { return true; }
    std::optional<Flit> generate(RouterId id, const NocState& state, TrafficCounters& counters,
                                 Draws& draws) const override;
    const BurstyPolicy& policy() const { return policy_; }

private:
    BurstyPolicy policy_;
};

/// Built-in factories: none, periodic, fixed, bursty.
std::vector<std::pair<std::string, TrafficFactory>> builtin_traffic_policies();

}  // namespace noc
