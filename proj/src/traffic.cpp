#include "noc/traffic.hpp"

#include <string>

namespace noc {

namespace {

int int_param(const nlohmann::json& params, const char* key, int fallback) {
    if (!params.contains(key)) return fallback;
    const auto& v = params.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("traffic.") + key + " must be an integer");
    return v.get<int>();
}

bool local_full(const NocState& state, RouterId id) {
    return state.router(id).port(Direction::Local).buffer.is_full();
}

}  // namespace

void PeriodicPolicy::validate() const {
    if (period < 1) throw ConfigError("traffic.period must be >= 1");
    if (duty_on < 0 || duty_on > period) throw ConfigError("traffic.duty_on must be in [0, period]");
}

void BurstyPolicy::validate() const {
    if (burst_min < 1 || sleep_min < 1) throw ConfigError("bursty bounds must be positive");
    if (burst_min > burst_max) throw ConfigError("bursty burst_min > burst_max");
    if (sleep_min > sleep_max) throw ConfigError("bursty sleep_min > sleep_max");
    if (burst_max > 0xFFFF || sleep_max > 0xFFFF) throw ConfigError("bursty bounds must be <= 65535");
}

RouterId uniform_dest_excluding_self(RouterId id, int router_count, Draws& draws) {
    if (router_count < 2) throw ContractViolation("destination draw needs at least two routers");
    const int d = draws.uniform(0, router_count - 2);
    return d >= id ? d + 1 : d;
}

std::optional<Flit> periodic_inject(RouterId id, std::uint64_t clk, const PeriodicPolicy& policy, Draws& draws,
                                    bool local_full, int router_count) {
    if (local_full) return std::nullopt;
    if (clk % static_cast<std::uint64_t>(policy.period) >= static_cast<std::uint64_t>(policy.duty_on)) {
        return std::nullopt;
    }
    return Flit{uniform_dest_excluding_self(id, router_count, draws)};
}

std::optional<Flit> bursty_inject(RouterId id, const BurstyPolicy& policy, TrafficCounters& counters, Draws& draws,
                                  bool local_full, int router_count) {
    if (local_full) return std::nullopt;
    if (counters.burst > 0) {
        Flit f{uniform_dest_excluding_self(id, router_count, draws)};
        --counters.burst;
        return f;
    }
    if (counters.sleep > 0) {
        --counters.sleep;
        return std::nullopt;
    }
    counters.burst = draws.uniform(policy.burst_min, policy.burst_max);
    counters.sleep = draws.uniform(policy.sleep_min, policy.sleep_max);
    return std::nullopt;
}

PeriodicTraffic::PeriodicTraffic(PeriodicPolicy policy) : policy_(policy) { policy_.validate(); }

std::optional<Flit> PeriodicTraffic::generate(RouterId id, const NocState& state, TrafficCounters&,
                                              Draws& draws) const {
    return periodic_inject(id, state.clk, policy_, draws, local_full(state, id), state.topo.size());
}

FixedTraffic::FixedTraffic(PeriodicPolicy duty, int shift) : duty_(duty), shift_(shift) { duty_.validate(); }

FixedTraffic::FixedTraffic(PeriodicPolicy duty, std::vector<RouterId> destinations)
    : duty_(duty), destinations_(std::move(destinations)) {
    duty_.validate();
}

RouterId FixedTraffic::destination(RouterId id, int router_count) const {
    if (!destinations_.empty()) return destinations_[static_cast<std::size_t>(id)];
    return (id + shift_) % router_count;
}

void FixedTraffic::validate(const Topology& topo) const {
    const int count = topo.size();
    if (destinations_.empty()) {
        if (shift_ % count == 0) throw ConfigError("fixed traffic shift must not be a multiple of n^2");
        if (shift_ < 0) throw ConfigError("fixed traffic shift must be positive");
        return;
    }
    if (static_cast<int>(destinations_.size()) != count) {
        throw ConfigError("fixed traffic needs one destination per router");
    }
    for (RouterId id = 0; id < count; ++id) {
        const RouterId d = destinations_[static_cast<std::size_t>(id)];
        if (!topo.contains(d) || d == id) {
            throw ConfigError("fixed traffic destination for router " + std::to_string(id) + " is invalid");
        }
    }
}

std::optional<Flit> FixedTraffic::generate(RouterId id, const NocState& state, TrafficCounters&, Draws&) const {
    if (local_full(state, id)) return std::nullopt;
    if (state.clk % static_cast<std::uint64_t>(duty_.period) >= static_cast<std::uint64_t>(duty_.duty_on)) {
        return std::nullopt;
    }
    return Flit{destination(id, state.topo.size())};
}

BurstyTraffic::BurstyTraffic(BurstyPolicy policy) : policy_(policy) { policy_.validate(); }

std::optional<Flit> BurstyTraffic::generate(RouterId id, const NocState& state, TrafficCounters& counters,
                                            Draws& draws) const {
    return bursty_inject(id, policy_, counters, draws, local_full(state, id), state.topo.size());
}

std::vector<std::pair<std::string, TrafficFactory>> builtin_traffic_policies() {
    std::vector<std::pair<std::string, TrafficFactory>> out;
    out.emplace_back("none", [](const nlohmann::json&) { return std::make_shared<NoTraffic>(); });
    out.emplace_back("periodic", [](const nlohmann::json& p) {
        return std::make_shared<PeriodicTraffic>(
            PeriodicPolicy{int_param(p, "duty_on", 3), int_param(p, "period", 10)});
    });
    out.emplace_back("fixed", [](const nlohmann::json& p) -> std::shared_ptr<const TrafficPolicy> {
        PeriodicPolicy duty{int_param(p, "duty_on", 3), int_param(p, "period", 10)};
        if (p.contains("destinations")) {
            if (!p.at("destinations").is_array()) throw ConfigError("traffic.destinations must be an array");
            return std::make_shared<FixedTraffic>(duty, p.at("destinations").get<std::vector<RouterId>>());
        }
        return std::make_shared<FixedTraffic>(duty, int_param(p, "shift", 1));
    });
    out.emplace_back("bursty", [](const nlohmann::json& p) {
        return std::make_shared<BurstyTraffic>(BurstyPolicy{int_param(p, "burst_min", 10),
                                                            int_param(p, "burst_max", 100),
                                                            int_param(p, "sleep_min", 200),
                                                            int_param(p, "sleep_max", 400)});
    });
    return out;
}

}  // namespace noc
