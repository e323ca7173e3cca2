#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "noc/mesh.hpp"

namespace noc {

/// Lock-step phases of one clock cycle. `Boundary` tags observations of a
/// state between cycles (including the initial state).
enum class Phase : std::uint8_t { Boundary, Generate, Prep, Advance, UpdatePriority, UpdateNoise, Tick };

std::string_view to_string(Phase p);

constexpr std::uint8_t bit(Direction d) { return static_cast<std::uint8_t>(1u << index_of(d)); }

struct RouterEvents {
    int services = 0;
    int consumptions = 0;
    std::optional<RouterId> injected;  // destination of the flit generated this cycle
    std::uint8_t blocked = 0;          // input ports left unserviced, by Direction bit
    std::uint8_t channels_used = 0;    // outgoing channels used, by Direction bit
    std::uint8_t received = 0;         // input ports pushed into, by Direction bit
    bool resistive = false;
    bool inductive = false;

    friend bool operator==(const RouterEvents&, const RouterEvents&) = default;
};

struct CycleEvents {
    std::uint64_t cycle = 0;
    std::vector<RouterEvents> routers;

    void reset(std::uint64_t cycle_index, std::size_t router_count);
    int injections() const;
    int consumptions() const;
    int resistive_events() const;
    int inductive_events() const;

    friend bool operator==(const CycleEvents&, const CycleEvents&) = default;
};

}  // namespace noc
