#include "noc/smc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

namespace noc {

namespace {

template <class T>
bool strictly_ascending(const std::vector<T>& v) {
    return std::adjacent_find(v.begin(), v.end(), [](const T& a, const T& b) { return !(a < b); }) == v.end();
}

std::size_t cell(const PsnQuery& q, std::size_t kind, std::size_t k, std::size_t n) {
    return (kind * q.thresholds.size() + k) * q.horizons.size() + n;
}

}  // namespace

void PsnQuery::validate(const Topology& topo) const {
    if (kinds.empty()) throw ConfigError("query needs at least one noise kind");
    if (thresholds.empty()) throw ConfigError("query needs at least one threshold K");
    if (horizons.empty()) throw ConfigError("query needs a nonempty horizon grid");
    if (!strictly_ascending(thresholds)) throw ConfigError("thresholds must be strictly ascending");
    if (!strictly_ascending(horizons)) throw ConfigError("horizon grid must be strictly ascending");
    std::vector<NoiseKind> sorted = kinds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("noise kinds must not repeat");
    }
    scope.validate(topo);
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t runs, double confidence) {
    if (runs == 0) throw ConfigError("confidence interval needs at least one run");
    if (!(confidence > 0.0 && confidence < 1.0)) throw ConfigError("confidence must be in (0, 1)");
    const double z = boost::math::quantile(boost::math::normal(), 1.0 - (1.0 - confidence) / 2.0);
    const double n = static_cast<double>(runs);
    const double p = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (hits == 0) ci.low = 0.0;
    if (hits == runs) ci.high = 1.0;
    ci.low = std::min(ci.low, p);
    ci.high = std::max(ci.high, p);
    return ci;
}

std::optional<std::uint64_t> first_hit_time(std::span<const std::uint64_t> counters, std::uint64_t threshold) {
    if (threshold == 0) return 0;
    for (std::size_t c = 0; c < counters.size(); ++c) {
        if (counters[c] >= threshold) return c;
    }
    return std::nullopt;
}

const CdfRow& CdfTable::at(NoiseKind kind, std::uint64_t threshold, std::uint64_t horizon) const {
    for (const auto& r : rows) {
        if (r.kind == kind && r.threshold == threshold && r.horizon == horizon) return r;
    }
    throw ContractViolation("no CDF row for the requested (kind, K, N)");
}

PartialEstimate simulate_partial(const EngineConfig& cfg, const PsnQuery& query, double confidence,
                                 std::uint64_t seed, std::uint64_t run_begin, std::uint64_t run_end,
                                 const std::string& config_digest) {
    const NocState initial = make_initial_state(cfg);
    query.validate(initial.topo);
    if (run_end < run_begin) throw ContractViolation("run range is reversed");

    PartialEstimate out;
    out.query = query;
    out.confidence = confidence;
    out.seed = seed;
    out.config_digest = config_digest;
    out.run_begin = run_begin;
    out.run_end = run_end;
    const std::size_t kinds = query.kinds.size();
    const std::size_t ks = query.thresholds.size();
    const std::size_t ns = query.horizons.size();
    out.hits.assign(kinds * ks * ns, 0);

    std::vector<bool> in_scope(static_cast<std::size_t>(initial.topo.size()));
    for (RouterId id = 0; id < initial.topo.size(); ++id) {
        in_scope[static_cast<std::size_t>(id)] = query.scope.matches(initial.topo, id);
    }
    const std::uint64_t last_cycle = query.horizons.back();
    std::vector<std::uint64_t> levels;
    for (auto k : query.thresholds) levels.push_back(query.scope.hit_level(initial.topo, k));

    NocState state;
    CycleEvents events;
    // first_hit[kind * ks + k]; -1 while not yet reached.
    std::vector<std::int64_t> first_hit(kinds * ks);
    std::vector<std::uint64_t> counter(kinds);

    for (std::uint64_t run = run_begin; run < run_end; ++run) {
        state = initial;
        RngDraws draws(seed, run);
        std::size_t pending = 0;
        for (std::size_t kd = 0; kd < kinds; ++kd) {
            counter[kd] = 0;
            for (std::size_t k = 0; k < ks; ++k) {
                const bool trivial = query.thresholds[k] == 0;
                first_hit[kd * ks + k] = trivial ? 0 : -1;
                pending += trivial ? 0 : 1;
            }
        }

        for (std::uint64_t c = 0; c <= last_cycle && pending > 0; ++c) {
            step_cycle(state, cfg, draws, events);
            for (std::size_t kd = 0; kd < kinds; ++kd) {
                const bool resistive = query.kinds[kd] == NoiseKind::Resistive;
                for (std::size_t id = 0; id < events.routers.size(); ++id) {
                    if (!in_scope[id]) continue;
                    const auto& ev = events.routers[id];
                    counter[kd] += (resistive ? ev.resistive : ev.inductive) ? 1 : 0;
                }
                for (std::size_t k = 0; k < ks; ++k) {
                    auto& hit = first_hit[kd * ks + k];
                    if (hit < 0 && counter[kd] >= levels[k]) {
                        hit = static_cast<std::int64_t>(c);
                        --pending;
                    }
                }
            }
        }

        for (std::size_t kd = 0; kd < kinds; ++kd) {
            for (std::size_t k = 0; k < ks; ++k) {
                const auto hit = first_hit[kd * ks + k];
                if (hit < 0) continue;
                auto from = std::lower_bound(query.horizons.begin(), query.horizons.end(),
                                             static_cast<std::uint64_t>(hit));
                for (auto n = static_cast<std::size_t>(from - query.horizons.begin()); n < ns; ++n) {
                    ++out.hits[cell(query, kd, k, n)];
                }
            }
        }
    }
    return out;
}

CdfTable merge_partial_estimates(std::span<const PartialEstimate> partials) {
    if (partials.empty()) throw ConfigError("nothing to merge");
    const PartialEstimate& ref = partials.front();
    std::vector<const PartialEstimate*> order;
    for (const auto& p : partials) {
        if (!(p.query == ref.query) || p.seed != ref.seed || p.config_digest != ref.config_digest ||
            p.confidence != ref.confidence || p.hits.size() != ref.hits.size()) {
            throw ConfigError("partial estimates disagree on query, seed, confidence or config");
        }
        order.push_back(&p);
    }
    std::sort(order.begin(), order.end(),
              [](const PartialEstimate* a, const PartialEstimate* b) { return a->run_begin < b->run_begin; });

    std::vector<std::uint64_t> hits(ref.hits.size(), 0);
    std::uint64_t runs = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && order[i]->run_begin < order[i - 1]->run_end) {
            throw ConfigError("partial estimates cover overlapping runs");
        }
        runs += order[i]->run_end - order[i]->run_begin;
        for (std::size_t j = 0; j < hits.size(); ++j) hits[j] += order[i]->hits[j];
    }
    if (runs == 0) throw ConfigError("merged estimate has no runs");

    CdfTable table;
    table.runs = runs;
    table.confidence = ref.confidence;
    table.seed = ref.seed;
    table.config_digest = ref.config_digest;
    const PsnQuery& q = ref.query;
    for (std::size_t kd = 0; kd < q.kinds.size(); ++kd) {
        for (std::size_t k = 0; k < q.thresholds.size(); ++k) {
            for (std::size_t n = 0; n < q.horizons.size(); ++n) {
                CdfRow row;
                row.kind = q.kinds[kd];
                row.threshold = q.thresholds[k];
                row.horizon = q.horizons[n];
                row.hits = hits[cell(q, kd, k, n)];
                row.p_hat = static_cast<double>(row.hits) / static_cast<double>(runs);
                const Interval ci = wilson_interval(row.hits, runs, ref.confidence);
                row.ci_low = ci.low;
                row.ci_high = ci.high;
                table.rows.push_back(row);
            }
        }
    }
    // Rows come out grouped by the query's kind order; the CSV contract wants
    // kinds in enum order.
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const CdfRow& a, const CdfRow& b) { return a.kind < b.kind; });
    return table;
}

CdfTable estimate_cdf(const EngineConfig& cfg, const PsnQuery& query, std::uint64_t runs, double confidence,
                      std::uint64_t seed, unsigned jobs, const std::string& config_digest) {
    if (runs == 0) throw ConfigError("runs must be >= 1");
    if (!(confidence > 0.0 && confidence < 1.0)) throw ConfigError("confidence must be in (0, 1)");
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(runs, 1024))));

    std::vector<PartialEstimate> partials(jobs);
    auto range = [&](unsigned j) {
        return std::pair{runs * j / jobs, runs * (j + 1) / jobs};
    };
    if (jobs == 1) {
        partials[0] = simulate_partial(cfg, query, confidence, seed, 0, runs, config_digest);
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        {
            std::vector<std::jthread> workers;
            for (unsigned j = 0; j < jobs; ++j) {
                workers.emplace_back([&, j] {
                    try {
                        auto [b, e] = range(j);
                        partials[j] = simulate_partial(cfg, query, confidence, seed, b, e, config_digest);
                    } catch (...) {
                        errors[j] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    return merge_partial_estimates(partials);
}

std::optional<std::uint64_t> median_first_hit(const CdfTable& table, NoiseKind kind, std::uint64_t threshold) {
    for (const auto& r : table.rows) {
        if (r.kind == kind && r.threshold == threshold && 2 * r.hits >= table.runs) return r.horizon;
    }
    return std::nullopt;
}

void write_csv(std::ostream& out, const CdfTable& table) {
    fmt::print(out, "# config_digest={} seed={}\n", table.config_digest, table.seed);
    fmt::print(out, "{}\n", kCsvHeader);
    for (const auto& r : table.rows) {
        fmt::print(out, "{},{},{},{:.8f},{:.8f},{:.8f},{},{},{}\n", to_string(r.kind), r.threshold, r.horizon,
                   r.p_hat, r.ci_low, r.ci_high, table.runs, table.confidence, table.seed);
    }
}

}  // namespace noc
