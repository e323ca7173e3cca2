#include "noc/engine.hpp"

#include <algorithm>
#include <string>

#include "noc/arbiter.hpp"
#include "noc/psn.hpp"
#include "noc/routing.hpp"
#include "noc/traffic.hpp"

namespace noc {

namespace {

[[noreturn]] void fault(const NocState& state, Phase phase, const std::string& what) {
    throw EngineFault("cycle " + std::to_string(state.clk) + ", phase " + std::string(to_string(phase)) + ": " +
                      what);
}

void observe(const StepOptions& options, Phase phase, const NocState& state, const CycleEvents& events,
             const EngineConfig& cfg) {
    if (cfg.check_invariants) verify_state(state, cfg, phase);
    if (options.observer != nullptr) (*options.observer)(phase, state, events);
}

bool is_permutation_of_directions(const std::array<Direction, 5>& list) {
    std::uint8_t seen = 0;
    for (Direction d : list) seen |= bit(d);
    return seen == 0x1F;
}

}  // namespace

EngineConfig::EngineConfig()
    : traffic(std::make_shared<PeriodicTraffic>()),
      routing(std::make_shared<XyRouting>()),
      arbitration(std::make_shared<RoundRobinArbiter>()) {}

void EngineConfig::validate() const {
    const Topology topo = make_topology(n);
    if (buffer_size < 1 || buffer_size > FifoBuffer::kMaxCapacity) {
        throw ConfigError("buffer_size must be in [1, " + std::to_string(FifoBuffer::kMaxCapacity) + "]");
    }
    if (activity_thresh < 0 || activity_thresh > kMaxActivity) {
        throw ConfigError("activity_thresh must be in [0, 5]");
    }
    if (!traffic || !routing || !arbitration) throw ConfigError("engine config is missing a policy");
    traffic->validate(topo);
}

NocState make_initial_state(const EngineConfig& cfg) {
    cfg.validate();
    return make_noc_state(cfg.topology(), cfg.buffer_size);
}

void verify_state(const NocState& state, const EngineConfig& cfg, Phase phase) {
    std::uint64_t held = 0;
    PsnCounters sum;
    for (RouterId id = 0; id < state.topo.size(); ++id) {
        const RouterState& r = state.router(id);
        for (Direction d : kAllDirections) {
            const PortState& p = r.port(d);
            held += static_cast<std::uint64_t>(p.buffer.size());
            if (p.buffer.size() > cfg.buffer_size) {
                fault(state, phase, "router " + std::to_string(id) + " buffer " + std::string(to_string(d)) +
                                        " holds " + std::to_string(p.buffer.size()) + " flits");
            }
            if (p.used_count > 1) {
                fault(state, phase, "router " + std::to_string(id) + " channel " + std::string(to_string(d)) +
                                        " used " + std::to_string(p.used_count) + " times");
            }
            if (!r.connected(d) && !p.buffer.empty()) {
                fault(state, phase, "router " + std::to_string(id) + " holds flits on a disconnected port");
            }
        }
        if (!is_permutation_of_directions(r.priority_list)) {
            fault(state, phase, "router " + std::to_string(id) + " priority list is not a permutation");
        }
        if (r.this_activity < 0 || r.this_activity > kMaxActivity) {
            fault(state, phase, "router " + std::to_string(id) + " activity out of range");
        }
        sum.resistive += state.router_psn[static_cast<std::size_t>(id)].resistive;
        sum.inductive += state.router_psn[static_cast<std::size_t>(id)].inductive;
    }
    if (state.injected != state.consumed + held) {
        fault(state, phase,
              "flit conservation broken: injected " + std::to_string(state.injected) + ", consumed " +
                  std::to_string(state.consumed) + ", in flight " + std::to_string(held));
    }
    if (sum != state.psn) fault(state, phase, "per-router noise counters do not sum to the global counters");
}

void step_cycle(NocState& state, const EngineConfig& cfg, Draws& draws, CycleEvents& events,
                const StepOptions& options) {
    const int count = state.topo.size();
    events.reset(state.clk, static_cast<std::size_t>(count));

    for (RouterId id = 0; id < count; ++id) {
        auto flit = cfg.traffic->generate(id, state, state.traffic[static_cast<std::size_t>(id)], draws);
        if (!flit) continue;
        auto& local = state.router(id).port(Direction::Local).buffer;
        if (local.is_full()) fault(state, Phase::Generate, "traffic policy injected into a full Local buffer");
        if (flit->dest == id || !state.topo.contains(flit->dest)) {
            fault(state, Phase::Generate, "router " + std::to_string(id) + " generated a flit for " +
                                              std::to_string(flit->dest));
        }
        local.enqueue(*flit);
        events.routers[static_cast<std::size_t>(id)].injected = flit->dest;
        ++state.injected;
    }
    observe(options, Phase::Generate, state, events, cfg);

    for (auto& r : state.routers) {
        for (auto& p : r.ports) {
            p.is_empty_snap = p.buffer.empty();
            p.is_full_snap = p.buffer.is_full();
        }
    }
    observe(options, Phase::Prep, state, events, cfg);

    if (options.advance_order.empty()) {
        for (RouterId id = 0; id < count; ++id) advance_router(state, cfg, id, events);
    } else {
        if (static_cast<int>(options.advance_order.size()) != count) {
            throw ContractViolation("advance order must list every router once");
        }
        std::vector<bool> seen(static_cast<std::size_t>(count), false);
        for (RouterId id : options.advance_order) {
            if (!state.topo.contains(id) || seen[static_cast<std::size_t>(id)]) {
                throw ContractViolation("advance order must list every router once");
            }
            seen[static_cast<std::size_t>(id)] = true;
            advance_router(state, cfg, id, events);
        }
    }
    observe(options, Phase::Advance, state, events, cfg);

    for (auto& r : state.routers) {
        if (cfg.fault == FaultInjection::BrokenArbiter) {
            update_priority_faulty(r);
        } else {
            cfg.arbitration->update(r);
        }
    }
    observe(options, Phase::UpdatePriority, state, events, cfg);

    for (RouterId id = 0; id < count; ++id) {
        auto& counters = state.router_psn[static_cast<std::size_t>(id)];
        const NoiseEvents ev = update_noise(state.router(id), cfg.activity_thresh, counters);
        auto& rec = events.routers[static_cast<std::size_t>(id)];
        rec.resistive = ev.resistive;
        rec.inductive = ev.inductive;
        state.psn.resistive += ev.resistive ? 1 : 0;
        state.psn.inductive += ev.inductive ? 1 : 0;
    }
    observe(options, Phase::UpdateNoise, state, events, cfg);

    ++state.clk;
    observe(options, Phase::Tick, state, events, cfg);
}

CycleEvents step_cycle(NocState& state, const EngineConfig& cfg, Draws& draws) {
    CycleEvents events;
    step_cycle(state, cfg, draws, events);
    return events;
}

Trace run(const EngineConfig& cfg, std::uint64_t cycles, std::uint64_t seed) {
    Trace trace;
    trace.final_state = make_initial_state(cfg);
    RngDraws draws(seed);
    trace.cycles.resize(static_cast<std::size_t>(cycles));
    for (auto& ev : trace.cycles) step_cycle(trace.final_state, cfg, draws, ev);
    return trace;
}

}  // namespace noc
