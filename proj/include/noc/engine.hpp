#pragma once

// Synchronous cycle engine: every router runs each phase before any router
// moves to the next one.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "noc/draws.hpp"
#include "noc/events.hpp"
#include "noc/mesh.hpp"
#include "noc/policy.hpp"

namespace noc {

/// Deliberate model defects, used to show that the checker catches them.
enum class FaultInjection : std::uint8_t {
    None,
    SkipFullGate,   // forwards into buffers that were full at the snapshot
    BrokenArbiter,  // priority list update duplicates blocked ports
};

struct EngineConfig {
    EngineConfig();

    int n = 2;
    int buffer_size = 4;
    int activity_thresh = 3;
    std::shared_ptr<const TrafficPolicy> traffic;
    std::shared_ptr<const RoutingPolicy> routing;
    std::shared_ptr<const ArbitrationPolicy> arbitration;
    FaultInjection fault = FaultInjection::None;
    /// Assert buffer bound, channel usage, single push and flit conservation
    /// after every phase; violations throw EngineFault.
    bool check_invariants = true;

    /// Throws ConfigError.
    void validate() const;
    Topology topology() const { return make_topology(n); }
};

using PhaseObserver = std::function<void(Phase, const NocState&, const CycleEvents&)>;

struct StepOptions {
    /// Router order for the Advance phase; empty means ascending ids.
    std::span<const RouterId> advance_order;
    /// Called after each phase with the intermediate state.
    const PhaseObserver* observer = nullptr;
};

NocState make_initial_state(const EngineConfig& cfg);

/// Runs Generate, Prep, Advance, UpdatePriority, UpdateNoise and the clock
/// tick over all routers. `events` is overwritten with this cycle's record.
void step_cycle(NocState& state, const EngineConfig& cfg, Draws& draws, CycleEvents& events,
                const StepOptions& options = {});

CycleEvents step_cycle(NocState& state, const EngineConfig& cfg, Draws& draws);

struct Trace {
    std::vector<CycleEvents> cycles;
    NocState final_state;
};

/// Deterministic in (cfg, seed).
Trace run(const EngineConfig& cfg, std::uint64_t cycles, std::uint64_t seed);

/// Throws EngineFault when the state breaks a mesh invariant.
void verify_state(const NocState& state, const EngineConfig& cfg, Phase phase);

}  // namespace noc
