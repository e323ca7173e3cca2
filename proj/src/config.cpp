#include "noc/config.hpp"

#include <fstream>
#include <set>

#include <fmt/format.h>

namespace noc {

namespace {

const std::set<std::string> kTopKeys{"n",           "buffer_size", "activity_thresh", "traffic", "routing",
                                     "arbitration", "psn_scope",   "fault_injection", "smc"};
const std::set<std::string> kSmcKeys{"runs", "confidence", "seed"};

template <class T>
T read(const nlohmann::json& doc, const char* key, T fallback) {
    if (!doc.contains(key)) return fallback;
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(fmt::format("config key '{}' has the wrong type", key));
    }
}

int read_int(const nlohmann::json& doc, const char* key, int fallback) {
    if (doc.contains(key) && !doc.at(key).is_number_integer()) {
        throw ConfigError(fmt::format("config key '{}' must be an integer", key));
    }
    return read<int>(doc, key, fallback);
}

void reject_unknown(const nlohmann::json& doc, const std::set<std::string>& allowed, std::string_view where) {
    for (const auto& [k, v] : doc.items()) {
        if (!allowed.contains(k)) throw ConfigError(fmt::format("unknown key '{}' in {}", k, where));
    }
}

}  // namespace

FaultInjection parse_fault(const std::string& name) {
    if (name == "none") return FaultInjection::None;
    if (name == "skip_full_gate") return FaultInjection::SkipFullGate;
    if (name == "broken_arbiter") return FaultInjection::BrokenArbiter;
    throw ConfigError(fmt::format("unknown fault_injection '{}'", name));
}

std::string_view to_string(FaultInjection f) {
    switch (f) {
        case FaultInjection::None: return "none";
        case FaultInjection::SkipFullGate: return "skip_full_gate";
        case FaultInjection::BrokenArbiter: return "broken_arbiter";
    }
    return "none";
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

RunConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(doc, kTopKeys, "config");

    RunConfig rc;
    EngineConfig& e = rc.engine;
    e.n = read_int(doc, "n", e.n);
    e.buffer_size = read_int(doc, "buffer_size", e.buffer_size);
    e.activity_thresh = read_int(doc, "activity_thresh", e.activity_thresh);

    nlohmann::json traffic = doc.contains("traffic") ? doc.at("traffic") : nlohmann::json::object();
    if (!traffic.is_object()) throw ConfigError("traffic must be an object");
    if (!traffic.contains("policy")) traffic["policy"] = "periodic";
    e.traffic = make_traffic_policy(traffic);

    const auto routing = read<std::string>(doc, "routing", "xy");
    const auto arbitration = read<std::string>(doc, "arbitration", "round_robin");
    e.routing = make_routing_policy(routing);
    e.arbitration = make_arbitration_policy(arbitration);
    e.fault = parse_fault(read<std::string>(doc, "fault_injection", "none"));
    e.validate();

    rc.scope = parse_scope(read<std::string>(doc, "psn_scope", "global"));
    rc.scope.validate(e.topology());

    if (doc.contains("smc")) {
        const auto& s = doc.at("smc");
        if (!s.is_object()) throw ConfigError("smc must be an object");
        reject_unknown(s, kSmcKeys, "smc");
        rc.smc.runs = read<std::uint64_t>(s, "runs", rc.smc.runs);
        rc.smc.confidence = read<double>(s, "confidence", rc.smc.confidence);
        rc.smc.seed = read<std::uint64_t>(s, "seed", rc.smc.seed);
    }
    if (rc.smc.runs == 0) throw ConfigError("smc.runs must be >= 1");
    if (!(rc.smc.confidence > 0.0 && rc.smc.confidence < 1.0)) throw ConfigError("smc.confidence must be in (0, 1)");

    rc.canonical = {
        {"n", e.n},
        {"buffer_size", e.buffer_size},
        {"activity_thresh", e.activity_thresh},
        {"traffic", traffic},
        {"routing", routing},
        {"arbitration", arbitration},
        {"psn_scope", to_string(rc.scope)},
        {"fault_injection", std::string(to_string(e.fault))},
        {"smc", {{"runs", rc.smc.runs}, {"confidence", rc.smc.confidence}, {"seed", rc.smc.seed}}},
    };
    rc.digest = fnv1a_hex(rc.canonical.dump());
    return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(fmt::format("config '{}': {}", path.string(), e.what()));
    }
    return parse_config(doc);
}

RunConfig default_config() { return parse_config(nlohmann::json::object()); }

}  // namespace noc
