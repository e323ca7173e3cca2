#pragma once

// JSON run configuration: engine parameters, policies and the PSN scope.

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "noc/engine.hpp"
#include "noc/psn.hpp"

namespace noc {

/// Environment variable naming the config file used when none is given.
inline constexpr const char* kConfigEnvVar = "NOC_CONFIG";

struct SmcDefaults {
    std::uint64_t runs = 1000;
    double confidence = 0.95;
    std::uint64_t seed = 1;
};

struct RunConfig {
    EngineConfig engine;
    PsnScope scope;
    SmcDefaults smc;
    /// Fully defaulted configuration; keys are sorted, so dump() is canonical.
    nlohmann::json canonical;
    /// FNV-1a 64 of canonical.dump(), as 16 hex digits.
    std::string digest;
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Config built from defaults only.
RunConfig default_config();

std::string fnv1a_hex(const std::string& bytes);

FaultInjection parse_fault(const std::string& name);
std::string_view to_string(FaultInjection f);

}  // namespace noc
