#pragma once

// Router activity and power-supply-noise event counting.

#include <cstdint>
#include <string>
#include <string_view>

#include "noc/mesh.hpp"

namespace noc {

inline constexpr int kMaxActivity = 5;

enum class NoiseKind : std::uint8_t { Resistive, Inductive };

std::string_view to_string(NoiseKind k);
/// Accepts "resistive" / "inductive"; throws ConfigError otherwise.
NoiseKind parse_noise_kind(std::string_view name);

enum class RouterClass : std::uint8_t { Corner, HorizontalEdge, VerticalEdge, Central };

std::string_view to_string(RouterClass c);

/// Corners have two missing neighbors. Edge routers on the top or bottom row
/// are horizontal edges, those on the left or right column vertical edges.
RouterClass classify_router(const Topology& topo, RouterId id);

/// Which routers' events a counter aggregates.
struct PsnScope {
    enum class Kind : std::uint8_t { Global, Router, Class };

    Kind kind = Kind::Global;
    RouterId router = 0;
    RouterClass router_class = RouterClass::Corner;

    static PsnScope global() { return {}; }
    static PsnScope of_router(RouterId id) { return {Kind::Router, id, RouterClass::Corner}; }
    static PsnScope of_class(RouterClass c) { return {Kind::Class, 0, c}; }

    bool matches(const Topology& topo, RouterId id) const;
    /// Routers matched by the scope.
    int members(const Topology& topo) const;
    /// A class counter is the mean over its members, so it reaches K once
    /// the summed events reach K * members. Global and router scopes sum.
    std::uint64_t hit_level(const Topology& topo, std::uint64_t threshold) const;
    /// Throws ConfigError for a router outside the mesh or an empty class.
    void validate(const Topology& topo) const;

    friend bool operator==(const PsnScope&, const PsnScope&) = default;
};

/// "global", "router:<id>" or "class:<corner|h_edge|v_edge|central>".
PsnScope parse_scope(std::string_view text);
std::string to_string(const PsnScope& scope);

/// Counts one serviced buffer. Throws EngineFault past five services.
void record_service(RouterState& router);

struct NoiseEvents {
    bool resistive = false;
    bool inductive = false;
};

/// Folds this cycle's activity into `counters`, then shifts it into last_activity.
NoiseEvents update_noise(RouterState& router, int activity_thresh, PsnCounters& counters);

/// Sum of per-router counters over the routers in scope.
PsnCounters scoped_counters(const NocState& state, const PsnScope& scope);

}  // namespace noc
