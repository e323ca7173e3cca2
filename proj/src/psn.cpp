#include "noc/psn.hpp"

#include <charconv>
#include <cstdlib>

namespace noc {

std::string_view to_string(NoiseKind k) {
    return k == NoiseKind::Resistive ? "resistive" : "inductive";
}

NoiseKind parse_noise_kind(std::string_view name) {
    if (name == "resistive") return NoiseKind::Resistive;
    if (name == "inductive") return NoiseKind::Inductive;
    throw ConfigError("unknown noise kind '" + std::string(name) + "'");
}

std::string_view to_string(RouterClass c) {
    switch (c) {
        case RouterClass::Corner: return "corner";
        case RouterClass::HorizontalEdge: return "h_edge";
        case RouterClass::VerticalEdge: return "v_edge";
        case RouterClass::Central: return "central";
    }
    return "?";
}

RouterClass classify_router(const Topology& topo, RouterId id) {
    const int last = topo.side() - 1;
    const bool top_or_bottom = topo.row_of(id) == 0 || topo.row_of(id) == last;
    const bool left_or_right = topo.col_of(id) == 0 || topo.col_of(id) == last;
    if (top_or_bottom && left_or_right) return RouterClass::Corner;
    if (top_or_bottom) return RouterClass::HorizontalEdge;
    if (left_or_right) return RouterClass::VerticalEdge;
    return RouterClass::Central;
}

bool PsnScope::matches(const Topology& topo, RouterId id) const {
    switch (kind) {
        case Kind::Global: return true;
        case Kind::Router: return id == router;
        case Kind::Class: return classify_router(topo, id) == router_class;
    }
    return false;
}

int PsnScope::members(const Topology& topo) const {
    int count = 0;
    for (RouterId id = 0; id < topo.size(); ++id) count += matches(topo, id) ? 1 : 0;
    return count;
}

std::uint64_t PsnScope::hit_level(const Topology& topo, std::uint64_t threshold) const {
    if (kind != Kind::Class) return threshold;
    return threshold * static_cast<std::uint64_t>(members(topo));
}

void PsnScope::validate(const Topology& topo) const {
    if (kind == Kind::Router && !topo.contains(router)) {
        throw ConfigError("psn scope router " + std::to_string(router) + " is outside the mesh");
    }
    if (kind == Kind::Class && members(topo) == 0) {
        throw ConfigError("psn scope " + to_string(*this) + " matches no router on this mesh");
    }
}

PsnScope parse_scope(std::string_view text) {
    if (text == "global") return PsnScope::global();
    if (text.starts_with("router:")) {
        auto digits = text.substr(7);
        int id = -1;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || id < 0) {
            throw ConfigError("bad router scope '" + std::string(text) + "'");
        }
        return PsnScope::of_router(id);
    }
    if (text.starts_with("class:")) {
        auto name = text.substr(6);
        for (auto c : {RouterClass::Corner, RouterClass::HorizontalEdge, RouterClass::VerticalEdge,
                       RouterClass::Central}) {
            if (to_string(c) == name) return PsnScope::of_class(c);
        }
    }
    throw ConfigError("unknown psn scope '" + std::string(text) + "'");
}

std::string to_string(const PsnScope& scope) {
    switch (scope.kind) {
        case PsnScope::Kind::Global: return "global";
        case PsnScope::Kind::Router: return "router:" + std::to_string(scope.router);
        case PsnScope::Kind::Class: return "class:" + std::string(to_string(scope.router_class));
    }
    return "?";
}

void record_service(RouterState& router) {
    if (router.this_activity >= kMaxActivity) {
        throw EngineFault("router activity exceeded " + std::to_string(kMaxActivity));
    }
    ++router.this_activity;
}

NoiseEvents update_noise(RouterState& router, int activity_thresh, PsnCounters& counters) {
    NoiseEvents ev;
    ev.inductive = std::abs(router.last_activity - router.this_activity) >= activity_thresh;
    ev.resistive = router.this_activity >= activity_thresh;
    counters.inductive += ev.inductive ? 1 : 0;
    counters.resistive += ev.resistive ? 1 : 0;
    router.last_activity = router.this_activity;
    router.this_activity = 0;
    return ev;
}

PsnCounters scoped_counters(const NocState& state, const PsnScope& scope) {
    PsnCounters total;
    for (RouterId id = 0; id < state.topo.size(); ++id) {
        if (!scope.matches(state.topo, id)) continue;
        total.resistive += state.router_psn[static_cast<std::size_t>(id)].resistive;
        total.inductive += state.router_psn[static_cast<std::size_t>(id)].inductive;
    }
    return total;
}

}  // namespace noc
