#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "noc/routing.hpp"
#include "support.hpp"

using namespace noc;
using noc::testing::make_cfg;
using noc::testing::place;
using noc::testing::quiet_cfg;

TEST_CASE("quiet cycle only ticks the clock") {
    const EngineConfig cfg = quiet_cfg(2);
    NocState s = make_initial_state(cfg);
    NocState expect = s;
    RngDraws rng(1);
    const auto ev = step_cycle(s, cfg, rng);
    expect.clk = 1;
    CHECK(s == expect);
    for (const auto& r : ev.routers) CHECK(r.services == 0);
}

TEST_CASE("r0 to r3 goes east first and takes two hops") {
    const EngineConfig cfg = quiet_cfg(2);
    NocState s = make_initial_state(cfg);
    place(s, 0, Direction::Local, 3);
    RngDraws rng(1);

    auto ev = step_cycle(s, cfg, rng);
    CHECK(s.router(1).port(Direction::West).buffer.size() == 1);
    CHECK(s.in_flight() == 1);
    CHECK(ev.consumptions() == 0);

    ev = step_cycle(s, cfg, rng);
    CHECK(s.router(3).port(Direction::North).buffer.size() == 1);
    CHECK(ev.consumptions() == 0);

    ev = step_cycle(s, cfg, rng);
    CHECK(ev.cycle == 2);
    CHECK(ev.routers[3].consumptions == 1);
    CHECK(s.in_flight() == 0);
    CHECK(s.consumed == 1);
}

TEST_CASE("run examples") {
    const EngineConfig cfg = make_cfg(2);
    const Trace empty = run(cfg, 0, 9);
    CHECK(empty.cycles.empty());
    CHECK(empty.final_state.clk == 0);

    CHECK(run(cfg, 200, 42).cycles == run(cfg, 200, 42).cycles);
    CHECK(run(cfg, 200, 42).final_state == run(cfg, 200, 42).final_state);
    CHECK(run(cfg, 200, 42).cycles != run(cfg, 200, 43).cycles);

    const Trace t = run(cfg, 30, 1);
    for (const auto& c : t.cycles) {
        if (c.cycle % 10 >= 3) CHECK(c.injections() == 0);
    }
    CHECK(t.cycles[0].injections() == 4);
}

TEST_CASE("a flit pushed during Advance is not serviced in the same cycle") {
    const EngineConfig cfg = make_cfg(4, 2);
    NocState s = make_initial_state(cfg);
    RngDraws rng(8);
    NocState snap;
    int checked = 0;
    const PhaseObserver observer = [&](Phase phase, const NocState& st, const CycleEvents& ev) {
        if (phase == Phase::Prep) snap = st;
        if (phase != Phase::Advance) return;
        for (RouterId id = 0; id < st.topo.size(); ++id) {
            const auto& e = ev.routers[static_cast<std::size_t>(id)];
            int nonempty = 0;
            for (Direction d : kAllDirections) {
                const PortState& p = snap.router(id).port(d);
                nonempty += p.is_empty_snap ? 0 : 1;
                if (p.is_empty_snap && (e.received & bit(d))) {
                    // arrived into an empty buffer and is still there
                    CHECK(st.router(id).port(d).buffer.size() == 1);
                    ++checked;
                }
            }
            CHECK(e.services <= nonempty);
        }
    };
    StepOptions opts;
    opts.observer = &observer;
    CycleEvents ev;
    for (int c = 0; c < 400; ++c) step_cycle(s, cfg, rng, ev, opts);
    CHECK(checked > 0);
}

TEST_CASE("engine fault carries cycle and phase") {
    EngineConfig cfg = make_cfg(2, 1);
    cfg.fault = FaultInjection::SkipFullGate;
    NocState s = make_initial_state(cfg);
    RngDraws rng(3);
    bool thrown = false;
    try {
        for (int c = 0; c < 1000; ++c) step_cycle(s, cfg, rng);
    } catch (const EngineFault& e) {
        thrown = true;
        CHECK(std::string(e.what()).find("cycle ") != std::string::npos);
        CHECK(std::string(e.what()).find("phase ") != std::string::npos);
    }
    CHECK(thrown);
}

TEST_CASE("broken arbiter is caught by the runtime checks") {
    EngineConfig cfg = make_cfg(2, 1);
    cfg.fault = FaultInjection::BrokenArbiter;
    NocState s = make_initial_state(cfg);
    RngDraws rng(3);
    CHECK_THROWS_AS([&] { for (int c = 0; c < 1000; ++c) step_cycle(s, cfg, rng); }(), EngineFault);
}

TEST_CASE("advance is confluent under router order permutations") {
    std::mt19937_64 meta(99);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(meta() % 3);
        const int buf = 1 + static_cast<int>(meta() % 3);
        const EngineConfig cfg = make_cfg(n, buf);
        NocState s = make_initial_state(cfg);
        RngDraws rng(meta());
        std::vector<RouterId> order(static_cast<std::size_t>(n * n));
        std::iota(order.begin(), order.end(), 0);
        for (int c = 0; c < 60; ++c) {
            // same draws for every ordering: Generate draws before Advance
            const std::uint64_t seed = meta();
            NocState base = s;
            RngDraws d0(seed);
            CycleEvents e0;
            step_cycle(base, cfg, d0, e0);
            for (int p = 0; p < 20; ++p) {
                std::shuffle(order.begin(), order.end(), meta);
                NocState other = s;
                RngDraws d1(seed);
                CycleEvents e1;
                StepOptions opts;
                opts.advance_order = order;
                step_cycle(other, cfg, d1, e1, opts);
                REQUIRE(other == base);
                REQUIRE(e1 == e0);
            }
            s = base;
        }
    }
}

TEST_CASE("injection-free network drains") {
    std::mt19937_64 meta(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(meta() % 3);
        const EngineConfig loaded = make_cfg(n, 1 + static_cast<int>(meta() % 4));
        EngineConfig quiet = loaded;
        quiet.traffic = std::make_shared<NoTraffic>();
        NocState s = make_initial_state(loaded);
        RngDraws rng(meta());
        const int warm = static_cast<int>(meta() % 200);
        for (int c = 0; c < warm; ++c) step_cycle(s, loaded, rng);
        const std::uint64_t limit = s.in_flight() * 2 * static_cast<std::uint64_t>(n);
        std::uint64_t cycles = 0;
        while (s.in_flight() > 0 && cycles <= limit) {
            step_cycle(s, quiet, rng);
            ++cycles;
        }
        CHECK(s.in_flight() == 0);
        CHECK(cycles <= limit);
    }
}

TEST_CASE("a buffer losing only channel contention is serviced within five such cycles") {
    for (int n : {2, 3, 4}) {
        const EngineConfig cfg = make_cfg(n, 2);
        NocState s = make_initial_state(cfg);
        RngDraws rng(static_cast<std::uint64_t>(n));
        NocState snap;
        std::map<std::pair<RouterId, int>, int> streak;
        int longest = 0;
        const PhaseObserver observer = [&](Phase phase, const NocState& st, const CycleEvents& ev) {
            if (phase == Phase::Prep) snap = st;
            if (phase != Phase::Advance) return;
            for (RouterId id = 0; id < st.topo.size(); ++id) {
                const RouterState& before = snap.router(id);
                for (Direction d : kAllDirections) {
                    const auto key = std::pair{id, index_of(d)};
                    if (!(ev.routers[static_cast<std::size_t>(id)].blocked & bit(d))) {
                        if (st.router(id).port(d).serviced) streak[key] = 0;
                        continue;
                    }
                    const RouterId dest = before.port(d).buffer.peek().dest;
                    const Direction out = route_direction(st.topo, id, dest);
                    const RouterId next = *st.topo.neighbor(id, out);
                    if (snap.router(next).port(opposite(out)).is_full_snap) continue;
                    longest = std::max(longest, ++streak[key]);
                }
            }
        };
        StepOptions opts;
        opts.observer = &observer;
        CycleEvents ev;
        for (int c = 0; c < 5000; ++c) step_cycle(s, cfg, rng, ev, opts);
        CHECK(longest > 0);
        CHECK(longest <= 4);
    }
}

TEST_CASE("conservation and one push per buffer across random runs") {
    std::mt19937_64 meta(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(meta() % 4);
        const EngineConfig cfg = make_cfg(n, 1 + static_cast<int>(meta() % 4), nullptr,
                                          static_cast<int>(meta() % 6));
        NocState s = make_initial_state(cfg);
        RngDraws rng(meta());
        CycleEvents ev;
        for (int c = 0; c < 500; ++c) {
            std::vector<std::array<int, 5>> before(s.routers.size());
            for (std::size_t i = 0; i < s.routers.size(); ++i) {
                for (Direction d : kAllDirections) before[i][static_cast<std::size_t>(index_of(d))] = s.routers[i].port(d).buffer.size();
            }
            step_cycle(s, cfg, rng, ev);
            CHECK(s.injected == s.consumed + s.in_flight());
            for (std::size_t i = 0; i < s.routers.size(); ++i) {
                for (Direction d : kCompassDirections) {
                    const int grew = s.routers[i].port(d).buffer.size() - before[i][static_cast<std::size_t>(index_of(d))];
                    CHECK(grew <= 1);
                }
            }
        }
    }
}

TEST_CASE("engine config validation") {
    EngineConfig cfg;
    cfg.buffer_size = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.buffer_size = 4;
    cfg.activity_thresh = 6;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.activity_thresh = 3;
    cfg.n = 1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
