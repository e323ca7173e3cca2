#pragma once

// Newline-delimited JSON records for traces and check reports.
//
// Every record starts with "record": one of "header", "cycle", "summary",
// "verdict" or "state". Keys are always written in the same order.

#include <cstdint>
#include <ostream>
#include <string>

#include <json.hpp>

#include "noc/config.hpp"
#include "noc/explorer.hpp"

namespace noc {

using Record = nlohmann::ordered_json;

Record header_record(const RunConfig& cfg, std::string_view command, std::uint64_t seed);

/// Events of one cycle plus the cumulative counters after it.
Record cycle_record(const CycleEvents& events, const NocState& after);

Record summary_record(const NocState& state, std::uint64_t cycles);

Record state_record(const NocState& state, std::size_t step);

Record verdict_record(const CheckResult& result, bool passed, std::size_t graph_states, bool exhausted);

void write_record(std::ostream& out, const Record& record);

}  // namespace noc
