#pragma once

// Monte-Carlo estimation of P(noise counter reaches K within N cycles).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noc/engine.hpp"
#include "noc/psn.hpp"

namespace noc {

/// Thresholds and horizons must be strictly ascending. One simulated trace
/// answers every (kind, K, N) combination of the query.
struct PsnQuery {
    std::vector<NoiseKind> kinds{NoiseKind::Resistive};
    std::vector<std::uint64_t> thresholds;
    std::vector<std::uint64_t> horizons;
    PsnScope scope;

    void validate(const Topology& topo) const;
    friend bool operator==(const PsnQuery&, const PsnQuery&) = default;
};

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for `hits` successes out of `runs` trials.
Interval wilson_interval(std::uint64_t hits, std::uint64_t runs, double confidence);

/// First cycle c with counters[c] >= threshold, where counters[c] is the value
/// after cycle c. The counter starts at 0, so threshold 0 hits at cycle 0.
std::optional<std::uint64_t> first_hit_time(std::span<const std::uint64_t> counters, std::uint64_t threshold);

struct CdfRow {
    NoiseKind kind = NoiseKind::Resistive;
    std::uint64_t threshold = 0;
    std::uint64_t horizon = 0;
    std::uint64_t hits = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;

    friend bool operator==(const CdfRow&, const CdfRow&) = default;
};

struct CdfTable {
    std::vector<CdfRow> rows;  // ordered by kind, then K, then N
    std::uint64_t runs = 0;
    double confidence = 0.95;
    std::uint64_t seed = 0;
    std::string config_digest;

    const CdfRow& at(NoiseKind kind, std::uint64_t threshold, std::uint64_t horizon) const;
    friend bool operator==(const CdfTable&, const CdfTable&) = default;
};

/// Hit counts for the runs [run_begin, run_end) of a seeded batch.
struct PartialEstimate {
    PsnQuery query;
    double confidence = 0.95;
    std::uint64_t seed = 0;
    std::string config_digest;
    std::uint64_t run_begin = 0;
    std::uint64_t run_end = 0;
    /// hits[(kind * |K| + k) * |N| + n] = runs with first hit <= N.
    std::vector<std::uint64_t> hits;
};

/// Run i always draws from the stream (seed, i), whichever partial runs it.
PartialEstimate simulate_partial(const EngineConfig& cfg, const PsnQuery& query, double confidence,
                                 std::uint64_t seed, std::uint64_t run_begin, std::uint64_t run_end,
                                 const std::string& config_digest = {});

/// Sums hit counts of disjoint partials; throws ConfigError on mismatched metadata.
CdfTable merge_partial_estimates(std::span<const PartialEstimate> partials);

/// Splits the runs over `jobs` worker threads; the table does not depend on `jobs`.
CdfTable estimate_cdf(const EngineConfig& cfg, const PsnQuery& query, std::uint64_t runs, double confidence,
                      std::uint64_t seed, unsigned jobs = 1, const std::string& config_digest = {});

/// Smallest horizon whose estimate reaches one half.
std::optional<std::uint64_t> median_first_hit(const CdfTable& table, NoiseKind kind, std::uint64_t threshold);

inline constexpr const char* kCsvHeader = "kind,K,N,p_hat,ci_low,ci_high,runs,confidence,seed";

/// One `# config_digest=... seed=...` comment line, the header, then one row per (kind, K, N).
void write_csv(std::ostream& out, const CdfTable& table);

}  // namespace noc
