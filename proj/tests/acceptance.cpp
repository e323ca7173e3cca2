// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "noc/config.hpp"
#include "noc/explorer.hpp"
#include "noc/properties.hpp"
#include "noc/smc.hpp"
#include "noc/trace_io.hpp"
#include "noc/traffic.hpp"

using namespace noc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Peak resident set size in MiB.
double peak_rss_mib() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) return std::stod(line.substr(6)) / 1024.0;
    }
    return 0.0;
}

EngineConfig engine(int n, int buffer, std::shared_ptr<const TrafficPolicy> traffic = nullptr, int thresh = 3) {
    EngineConfig cfg;
    cfg.n = n;
    cfg.buffer_size = buffer;
    cfg.activity_thresh = thresh;
    if (traffic) cfg.traffic = std::move(traffic);
    return cfg;
}

PsnQuery query(std::vector<std::uint64_t> ks, std::vector<std::uint64_t> ns, PsnScope scope = {}) {
    PsnQuery q;
    q.thresholds = std::move(ks);
    q.horizons = std::move(ns);
    q.scope = scope;
    return q;
}

std::vector<std::uint64_t> range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> v(hi - lo + 1);
    std::iota(v.begin(), v.end(), lo);
    return v;
}

Outcome functional_verification() {
    const auto t0 = Clock::now();
    std::string detail;
    bool pass = true;
    for (int buffer : {1, 2}) {
        const EngineConfig cfg = engine(2, buffer);
        const auto start = Clock::now();
        const StateGraph g = explore(cfg);
        const auto props = properties_for(cfg, property_family_names());
        const auto results = check_properties(g, props);
        int ok = 0;
        for (std::size_t i = 0; i < props.size(); ++i) ok += passed(props[i], results[i].verdict) ? 1 : 0;
        pass = pass && !g.exhausted && ok == static_cast<int>(props.size());
        detail += fmt::format("buffer {}: {} states, {}/{} properties ok, {:.1f}s; ", buffer, g.size(), ok,
                              props.size(), seconds_since(start));
    }
    const double total = seconds_since(t0);
    const double mem = peak_rss_mib();
    pass = pass && total < 300.0 && mem < 4096.0;
    return {pass, detail + fmt::format("total {:.1f}s, peak {:.0f} MiB", total, mem)};
}

Outcome engine_explorer_equivalence() {
    struct Case {
        std::string name;
        EngineConfig cfg;
    };
    const std::vector<Case> cases{
        {"2x2 shift 1", engine(2, 1, std::make_shared<FixedTraffic>(PeriodicPolicy{3, 10}, 1))},
        {"3x3 shift 4", engine(3, 2, std::make_shared<FixedTraffic>(PeriodicPolicy{3, 10}, 4))},
        {"2x2 reverse, 2/5 duty",
         engine(2, 2, std::make_shared<FixedTraffic>(PeriodicPolicy{2, 5}, std::vector<RouterId>{3, 2, 1, 0}))},
    };
    bool pass = true;
    std::string detail;
    for (const auto& c : cases) {
        const StateGraph g = explore(c.cfg);
        NocState sim = make_initial_state(c.cfg);
        RngDraws rng(1);
        std::size_t at = 0;
        int matched = 0;
        for (int cycle = 0; cycle < 50; ++cycle) {
            const auto next = successors(g, at);
            if (next.size() != 1 || !next[0].target) break;
            at = *next[0].target;
            step_cycle(sim, c.cfg, rng);
            const auto key = g.key(at);
            const auto sim_key = g.codec.encode(sim);
            if (!std::equal(key.begin(), key.end(), sim_key.begin(), sim_key.end())) break;
            NocState decoded = g.state(at);
            bool same = true;
            for (RouterId id = 0; id < sim.topo.size(); ++id) {
                const auto& a = decoded.router(id);
                const auto& b = sim.router(id);
                same = same && a.priority_list == b.priority_list;
                for (Direction d : kAllDirections) same = same && a.port(d).buffer == b.port(d).buffer;
            }
            if (!same) break;
            ++matched;
        }
        pass = pass && matched == 50;
        detail += fmt::format("{}: {}/50 cycles; ", c.name, matched);
    }
    return {pass, detail};
}

Outcome smc_calibration() {
    const EngineConfig cfg = engine(2, 1);
    bool pass = true;
    std::string detail;
    for (std::uint64_t k : {1u, 3u}) {
        const double exact = exact_reachability(cfg, NoiseKind::Resistive, k, PsnScope::global(), 20);
        int covered = 0;
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
            const CdfTable t = estimate_cdf(cfg, query({k}, {20}), 1000, 0.95, 10'000 + rep);
            const auto& r = t.at(NoiseKind::Resistive, k, 20);
            covered += (r.ci_low <= exact && exact <= r.ci_high) ? 1 : 0;
        }
        pass = pass && covered >= 93;
        detail += fmt::format("K={}: exact {:.6f}, covered {}/100; ", k, exact, covered);
    }
    return {pass, detail};
}

Outcome latency_law() {
    bool pass = true;
    int pairs = 0;
    int bad = 0;
    std::string example;
    for (int n : {2, 3, 4}) {
        const EngineConfig cfg = engine(n, 4, std::make_shared<NoTraffic>());
        for (RouterId s = 0; s < n * n; ++s) {
            for (RouterId d = 0; d < n * n; ++d) {
                if (s == d) continue;
                NocState st = make_initial_state(cfg);
                st.router(s).port(Direction::Local).buffer.enqueue(Flit{d});
                st.injected = 1;
                RngDraws rng(0);
                CycleEvents ev;
                std::optional<std::uint64_t> consumed_at;
                for (int c = 0; c < 4 * n && !consumed_at; ++c) {
                    step_cycle(st, cfg, rng, ev);
                    if (ev.routers[static_cast<std::size_t>(d)].consumptions == 1) consumed_at = ev.cycle;
                }
                ++pairs;
                const bool ok = consumed_at && *consumed_at == static_cast<std::uint64_t>(st.topo.manhattan(s, d));
                bad += ok ? 0 : 1;
                if (n == 2 && s == 0 && d == 3) {
                    example = fmt::format("r0->r3 on 2x2 takes {} cycles", consumed_at ? static_cast<long>(*consumed_at) : -1L);
                    pass = pass && consumed_at == 2u;
                }
            }
        }
    }
    pass = pass && bad == 0;
    return {pass, fmt::format("{} pairs, {} mismatches; {}", pairs, bad, example)};
}

Outcome step_pattern() {
    const auto t0 = Clock::now();
    const std::vector<std::uint64_t> ks{1, 2, 3, 4};
    const CdfTable t = estimate_cdf(engine(2, 4), query(ks, range(0, 100)), 10'000, 0.95, 2024);
    bool pass = true;
    std::string detail;
    for (auto k : ks) {
        double on = 0.0;
        double off = 0.0;
        double prev = 0.0;
        for (std::uint64_t n = 0; n <= 100; ++n) {
            const double p = t.at(NoiseKind::Resistive, k, n).p_hat;
            (n % 10 >= 6 ? off : on) += p - prev;
            prev = p;
        }
        const double ratio = on > 0.0 ? off / on : 1.0;
        pass = pass && on > 0.0 && ratio < 0.25;
        detail += fmt::format("K={}: rise in 0..5 {:.4f}, in 6..9 {:.4f}, ratio {:.4f}; ", k, on, off, ratio);
    }
    const double secs = seconds_since(t0);
    pass = pass && secs < 120.0;
    return {pass, detail + fmt::format("{:.1f}s", secs)};
}

Outcome size_monotonicity() {
    const auto t0 = Clock::now();
    const std::uint64_t k = 10;
    std::vector<std::optional<std::uint64_t>> medians;
    std::string detail;
    for (int n : {8, 4, 3, 2}) {
        const CdfTable t = estimate_cdf(engine(n, 4), query({k}, range(0, 1000)), 10'000, 0.95, 77);
        medians.push_back(median_first_hit(t, NoiseKind::Resistive, k));
        detail += fmt::format("{}x{} median {}; ", n, n, medians.back() ? std::to_string(*medians.back()) : "none");
    }
    bool pass = std::all_of(medians.begin(), medians.end(), [](const auto& m) { return m.has_value(); });
    for (std::size_t i = 1; pass && i < medians.size(); ++i) pass = *medians[i - 1] <= *medians[i];
    const double secs = seconds_since(t0);
    pass = pass && secs < 600.0;
    return {pass, fmt::format("K={}, T=3: {}{:.1f}s", k, detail, secs)};
}

Outcome class_ordering() {
    const std::uint64_t k = 3;
    const std::uint64_t n = 30;
    std::vector<CdfRow> rows;
    std::string detail;
    for (RouterClass c : {RouterClass::Central, RouterClass::HorizontalEdge, RouterClass::VerticalEdge,
                          RouterClass::Corner}) {
        const CdfTable t = estimate_cdf(engine(3, 4), query({k}, {n}, PsnScope::of_class(c)), 10'000, 0.95, 555);
        rows.push_back(t.at(NoiseKind::Resistive, k, n));
        detail += fmt::format("{} {:.4f} [{:.4f}, {:.4f}]; ", to_string(c), rows.back().p_hat, rows.back().ci_low,
                              rows.back().ci_high);
    }
    bool pass = rows[0].p_hat >= rows[1].p_hat && rows[1].p_hat >= rows[2].p_hat && rows[2].p_hat >= rows[3].p_hat;
    const double widths = (rows[0].ci_high - rows[0].ci_low) + (rows[3].ci_high - rows[3].ci_low);
    const double gap = rows[0].p_hat - rows[3].p_hat;
    pass = pass && gap > widths;
    return {pass, fmt::format("K={}, N={}: {}central-corner {:.4f} vs CI widths {:.4f}", k, n, detail, gap, widths)};
}

Outcome invariant_suite() {
    std::mt19937_64 meta(8);
    std::uint64_t cycles = 0;
    std::uint64_t violations = 0;
    std::uint64_t permutations = 0;
    int configs = 0;
    while (cycles < 100'000) {
        const int n = 2 + static_cast<int>(meta() % 4);
        std::shared_ptr<const TrafficPolicy> traffic;
        switch (meta() % 3) {
            case 0: {
                const int period = 1 + static_cast<int>(meta() % 12);
                traffic = std::make_shared<PeriodicTraffic>(PeriodicPolicy{static_cast<int>(meta() % (period + 1)), period});
                break;
            }
            case 1: traffic = std::make_shared<BurstyTraffic>(BurstyPolicy{1, 20, 1, 30}); break;
            default: traffic = std::make_shared<FixedTraffic>(PeriodicPolicy{3, 10}, 1 + static_cast<int>(meta() % (n * n - 1)));
        }
        const EngineConfig cfg = engine(n, 1 + static_cast<int>(meta() % 6), traffic, static_cast<int>(meta() % 6));
        ++configs;
        NocState s = make_initial_state(cfg);
        std::vector<RouterId> order(static_cast<std::size_t>(n * n));
        std::iota(order.begin(), order.end(), 0);
        for (int c = 0; c < 2000 && cycles < 100'000; ++c, ++cycles) {
            const std::uint64_t seed = meta();
            NocState base = s;
            CycleEvents ev;
            try {
                RngDraws d(seed);
                step_cycle(base, cfg, d, ev);  // runtime assertions after every phase
            } catch (const EngineFault&) {
                ++violations;
                break;
            }
            for (RouterId id = 0; id < s.topo.size(); ++id) {
                for (Direction dir : kCompassDirections) {
                    const int grew = base.router(id).port(dir).buffer.size() - s.router(id).port(dir).buffer.size();
                    if (grew > 1) ++violations;
                }
            }
            if (base.injected != base.consumed + base.in_flight()) ++violations;
            for (int p = 0; p < 20; ++p) {
                std::shuffle(order.begin(), order.end(), meta);
                NocState other = s;
                CycleEvents ev2;
                RngDraws d(seed);
                StepOptions opts;
                opts.advance_order = order;
                try {
                    step_cycle(other, cfg, d, ev2, opts);
                } catch (const EngineFault&) {
                    ++violations;
                    continue;
                }
                ++permutations;
                if (!(other == base) || !(ev2 == ev)) ++violations;
            }
            s = std::move(base);
        }
    }
    return {violations == 0, fmt::format("{} cycles over {} random configs, {} permuted replays, {} violations",
                                         cycles, configs, permutations, violations)};
}

std::string trace_text(const RunConfig& rc, std::uint64_t cycles, std::uint64_t seed) {
    std::ostringstream out;
    NocState s = make_initial_state(rc.engine);
    RngDraws d(seed);
    CycleEvents ev;
    write_record(out, header_record(rc, "simulate", seed));
    for (std::uint64_t c = 0; c < cycles; ++c) {
        step_cycle(s, rc.engine, d, ev);
        write_record(out, cycle_record(ev, s));
    }
    write_record(out, summary_record(s, cycles));
    return out.str();
}

Outcome determinism_and_merge() {
    const RunConfig rc = parse_config({{"n", 3}});
    const bool traces = trace_text(rc, 2000, 5) == trace_text(rc, 2000, 5);
    PsnQuery q = query({1, 3, 8}, range(0, 60));
    q.kinds = {NoiseKind::Resistive, NoiseKind::Inductive};
    const CdfTable seq = estimate_cdf(rc.engine, q, 4000, 0.95, 99, 1, rc.digest);
    const CdfTable par = estimate_cdf(rc.engine, q, 4000, 0.95, 99, 4, rc.digest);
    std::ostringstream a;
    std::ostringstream b;
    write_csv(a, seq);
    write_csv(b, par);
    const bool same = seq == par && a.str() == b.str();
    return {traces && same,
            fmt::format("seeded traces identical: {}; 4-way parallel CSV identical to sequential: {}", traces, same)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"functional verification on 2x2", functional_verification},
        {"engine/explorer equivalence", engine_explorer_equivalence},
        {"SMC calibration against exact probability", smc_calibration},
        {"uncontended latency equals Manhattan distance", latency_law},
        {"step pattern of the resistive CDF", step_pattern},
        {"median first hit shrinks with mesh size", size_monotonicity},
        {"router class ordering on 3x3", class_ordering},
        {"runtime invariant suite", invariant_suite},
        {"determinism and parallel merge", determinism_and_merge},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.contains(id)) continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        fmt::print("ACCEPTANCE {} {}: {} ({}) [{:.1f}s]\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail,
                   seconds_since(t0));
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
