#include "noc/trace_io.hpp"

namespace noc {

Record header_record(const RunConfig& cfg, std::string_view command, std::uint64_t seed) {
    Record r;
    r["record"] = "header";
    r["command"] = command;
    r["config_digest"] = cfg.digest;
    r["seed"] = seed;
    r["config"] = Record::parse(cfg.canonical.dump());
    return r;
}

Record cycle_record(const CycleEvents& events, const NocState& after) {
    Record r;
    r["record"] = "cycle";
    r["cycle"] = events.cycle;
    Record injections = Record::array();
    Record activity = Record::array();
    Record resistive = Record::array();
    Record inductive = Record::array();
    int consumed = 0;
    for (std::size_t id = 0; id < events.routers.size(); ++id) {
        const auto& ev = events.routers[id];
        if (ev.injected) injections.push_back({{"src", id}, {"dest", *ev.injected}});
        activity.push_back(ev.services);
        consumed += ev.consumptions;
        if (ev.resistive) resistive.push_back(id);
        if (ev.inductive) inductive.push_back(id);
    }
    r["injections"] = std::move(injections);
    r["consumptions"] = consumed;
    r["activity"] = std::move(activity);
    r["resistive_routers"] = std::move(resistive);
    r["inductive_routers"] = std::move(inductive);
    r["in_flight"] = after.in_flight();
    r["resistive_total"] = after.psn.resistive;
    r["inductive_total"] = after.psn.inductive;
    return r;
}

Record summary_record(const NocState& state, std::uint64_t cycles) {
    Record r;
    r["record"] = "summary";
    r["cycles"] = cycles;
    r["injected"] = state.injected;
    r["consumed"] = state.consumed;
    r["in_flight"] = state.in_flight();
    r["resistive"] = state.psn.resistive;
    r["inductive"] = state.psn.inductive;
    Record per_router = Record::array();
    for (const auto& c : state.router_psn) per_router.push_back({{"resistive", c.resistive}, {"inductive", c.inductive}});
    r["router_psn"] = std::move(per_router);
    return r;
}

Record state_record(const NocState& state, std::size_t step) {
    Record r;
    r["record"] = "state";
    r["step"] = step;
    r["clk"] = state.clk;
    Record routers = Record::array();
    for (RouterId id = 0; id < state.topo.size(); ++id) {
        const RouterState& rs = state.router(id);
        Record entry;
        entry["id"] = id;
        Record prio = Record::array();
        for (Direction d : rs.priority_list) prio.push_back(to_string(d));
        entry["priority"] = std::move(prio);
        Record buffers;
        for (Direction d : kAllDirections) {
            if (!rs.connected(d)) continue;
            Record flits = Record::array();
            const FifoBuffer& b = rs.port(d).buffer;
            for (int i = 0; i < b.size(); ++i) flits.push_back(b[i].dest);
            buffers[std::string(to_string(d))] = std::move(flits);
        }
        entry["buffers"] = std::move(buffers);
        routers.push_back(std::move(entry));
    }
    r["routers"] = std::move(routers);
    return r;
}

Record verdict_record(const CheckResult& result, bool passed, std::size_t graph_states, bool exhausted) {
    Record r;
    r["record"] = "verdict";
    r["property"] = result.name;
    r["verdict"] = to_string(result.verdict);
    r["passed"] = passed;
    r["graph_states"] = graph_states;
    r["exhausted"] = exhausted;
    r["path_states"] = result.states.size();
    r["path_choices"] = result.choices;
    r["phase"] = to_string(result.phase);
    return r;
}

void write_record(std::ostream& out, const Record& record) { out << record.dump() << '\n'; }

}  // namespace noc
