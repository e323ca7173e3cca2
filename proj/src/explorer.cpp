#include "noc/explorer.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace noc {

// ---------------------------------------------------------------------------
// Codec

StateCodec::StateCodec(const EngineConfig& cfg)
    : blank_(make_initial_state(cfg)),
      period_(cfg.traffic->clock_period()),
      counters_(cfg.traffic->uses_counters()) {
    if (blank_.topo.size() > 256) throw ConfigError("state keys support at most 256 routers");
}

void StateCodec::encode(const NocState& state, std::vector<std::uint8_t>& out) const {
    const std::uint64_t phase = period_ > 0 ? state.clk % static_cast<std::uint64_t>(period_) : 0;
    out.push_back(static_cast<std::uint8_t>(phase & 0xFF));
    out.push_back(static_cast<std::uint8_t>(phase >> 8));
    for (RouterId id = 0; id < state.topo.size(); ++id) {
        const RouterState& r = state.router(id);
        unsigned packed = 0;
        for (Direction d : r.priority_list) packed = packed * 5 + static_cast<unsigned>(index_of(d));
        out.push_back(static_cast<std::uint8_t>(packed & 0xFF));
        out.push_back(static_cast<std::uint8_t>(packed >> 8));
        for (Direction d : kAllDirections) {
            const FifoBuffer& b = r.port(d).buffer;
            if (!r.connected(d)) {
                if (!b.empty()) throw EngineFault("flit stored on a disconnected port");
                continue;
            }
            out.push_back(static_cast<std::uint8_t>(b.size()));
            for (int i = 0; i < b.size(); ++i) out.push_back(static_cast<std::uint8_t>(b[i].dest));
        }
        if (counters_) {
            const auto& c = state.traffic[static_cast<std::size_t>(id)];
            for (int v : {c.burst, c.sleep}) {
                out.push_back(static_cast<std::uint8_t>(v & 0xFF));
                out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
            }
        }
    }
}

std::vector<std::uint8_t> StateCodec::encode(const NocState& state) const {
    std::vector<std::uint8_t> out;
    encode(state, out);
    return out;
}

std::size_t StateCodec::decode(std::span<const std::uint8_t> bytes, NocState& out) const {
    out = blank_;
    std::size_t pos = 0;
    auto next = [&]() -> unsigned {
        if (pos >= bytes.size()) throw ContractViolation("truncated state key");
        return bytes[pos++];
    };
    unsigned phase = next();
    phase |= next() << 8;
    out.clk = phase;
    for (RouterId id = 0; id < out.topo.size(); ++id) {
        RouterState& r = out.router(id);
        unsigned packed = next();
        packed |= next() << 8;
        for (int i = 4; i >= 0; --i) {
            r.priority_list[static_cast<std::size_t>(i)] = static_cast<Direction>(packed % 5);
            packed /= 5;
        }
        for (Direction d : kAllDirections) {
            if (!r.connected(d)) continue;
            const unsigned len = next();
            for (unsigned i = 0; i < len; ++i) r.port(d).buffer.push_unchecked(Flit{static_cast<RouterId>(next())});
        }
        if (counters_) {
            auto& c = out.traffic[static_cast<std::size_t>(id)];
            c.burst = static_cast<int>(next());
            c.burst |= static_cast<int>(next() << 8);
            c.sleep = static_cast<int>(next());
            c.sleep |= static_cast<int>(next() << 8);
        }
    }
    out.injected = out.in_flight();
    return pos;
}

// ---------------------------------------------------------------------------
// Draw sources

int ScriptedDraws::uniform(int lo, int hi) {
    if (pos_ >= choices_.size()) throw ContractViolation("scripted draws ran out");
    const int v = choices_[pos_++];
    if (v < lo || v > hi) throw ContractViolation("scripted draw outside the requested range");
    return v;
}

int EnumeratingDraws::uniform(int lo, int hi) {
    if (pos_ < choices_.size()) {
        if (ranges_.size() <= pos_) ranges_.emplace_back(lo, hi);
        return choices_[pos_++];
    }
    choices_.push_back(lo);
    ranges_.emplace_back(lo, hi);
    ++pos_;
    return lo;
}

void EnumeratingDraws::rewind() { pos_ = 0; }

bool EnumeratingDraws::advance() {
    choices_.resize(pos_);
    ranges_.resize(pos_);
    for (std::size_t i = choices_.size(); i-- > 0;) {
        if (choices_[i] < ranges_[i].second) {
            ++choices_[i];
            choices_.resize(i + 1);
            ranges_.resize(i + 1);
            pos_ = 0;
            return true;
        }
    }
    return false;
}

double EnumeratingDraws::probability() const {
    double p = 1.0;
    for (std::size_t i = 0; i < pos_; ++i) p /= static_cast<double>(ranges_[i].second - ranges_[i].first + 1);
    return p;
}

std::vector<int> EnumeratingDraws::choices() const {
    return {choices_.begin(), choices_.begin() + static_cast<std::ptrdiff_t>(pos_)};
}

// ---------------------------------------------------------------------------
// Key store: deduplicated byte strings in one arena.

class KeyStore {
public:
    KeyStore() : set_(1024, Hash{this}, Eq{this}) {}
    KeyStore(const KeyStore&) = delete;
    KeyStore& operator=(const KeyStore&) = delete;

    std::size_t size() const { return offsets_.size() - 1; }

    std::span<const std::uint8_t> key(std::uint32_t id) const {
        if (id == kProbe) return probe_;
        return {arena_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
    }

    std::optional<std::uint32_t> find(std::span<const std::uint8_t> bytes) const {
        probe_ = bytes;
        auto it = set_.find(kProbe);
        if (it == set_.end()) return std::nullopt;
        return *it;
    }

    /// Returns (id, inserted).
    std::pair<std::uint32_t, bool> insert(std::span<const std::uint8_t> bytes) {
        if (auto hit = find(bytes)) return {*hit, false};
        const auto id = static_cast<std::uint32_t>(size());
        arena_.insert(arena_.end(), bytes.begin(), bytes.end());
        offsets_.push_back(arena_.size());
        set_.insert(id);
        return {id, true};
    }

private:
    static constexpr std::uint32_t kProbe = std::numeric_limits<std::uint32_t>::max();

    struct Hash {
        const KeyStore* store;
        std::size_t operator()(std::uint32_t id) const {
            auto k = store->key(id);
            return std::hash<std::string_view>{}(
                std::string_view(reinterpret_cast<const char*>(k.data()), k.size()));
        }
    };
    struct Eq {
        const KeyStore* store;
        bool operator()(std::uint32_t a, std::uint32_t b) const {
            auto x = store->key(a);
            auto y = store->key(b);
            return std::equal(x.begin(), x.end(), y.begin(), y.end());
        }
    };

    std::vector<std::uint8_t> arena_;
    std::vector<std::size_t> offsets_{0};
    mutable std::span<const std::uint8_t> probe_;
    std::unordered_set<std::uint32_t, Hash, Eq> set_;
};

// ---------------------------------------------------------------------------
// Graph

namespace {

EngineConfig unchecked(EngineConfig cfg) {
    cfg.check_invariants = false;
    return cfg;
}

/// Runs `body(draws)` once per combination of draw results.
template <class Body>
void for_each_outcome(Body&& body) {
    EnumeratingDraws draws;
    do {
        draws.rewind();
        body(draws);
    } while (draws.advance());
}

struct Outcome {
    NocState next;
    CycleEvents events;
    bool faulted = false;
};

/// Steps a copy of `from`; engine faults and contract violations of a
/// defective model are reported instead of propagated.
void step_outcome(const EngineConfig& cfg, const NocState& from, Draws& draws, Outcome& out,
                  const PhaseObserver* observer) {
    out.next = from;
    out.faulted = false;
    StepOptions opts;
    opts.observer = observer;
    try {
        step_cycle(out.next, cfg, draws, out.events, opts);
    } catch (const EngineFault&) {
        out.faulted = true;
    } catch (const ContractViolation&) {
        out.faulted = true;
    }
}

}  // namespace

StateGraph::StateGraph(const EngineConfig& c) : cfg(unchecked(c)), codec(cfg), keys(std::make_unique<KeyStore>()) {}
StateGraph::StateGraph(StateGraph&&) noexcept = default;
StateGraph& StateGraph::operator=(StateGraph&&) noexcept = default;
StateGraph::~StateGraph() = default;

std::size_t StateGraph::size() const { return keys->size(); }

std::span<const std::uint8_t> StateGraph::key(std::size_t index) const {
    return keys->key(static_cast<std::uint32_t>(index));
}

NocState StateGraph::state(std::size_t index) const {
    NocState s;
    codec.decode(key(index), s);
    return s;
}

std::optional<std::size_t> StateGraph::find(const NocState& s) const {
    auto bytes = codec.encode(s);
    if (auto id = keys->find(bytes)) return *id;
    return std::nullopt;
}

StateGraph explore(const EngineConfig& cfg, const ExploreOptions& options) {
    StateGraph g(cfg);
    std::vector<std::uint8_t> buf;
    g.codec.encode(make_initial_state(g.cfg), buf);
    g.keys->insert(buf);
    g.parent.push_back(StateGraph::kNoParent);
    g.parent_outcome.push_back(0);
    g.depth.push_back(0);
    if (g.size() > options.max_states) {
        g.exhausted = true;
        return g;
    }

    NocState from;
    Outcome out;
    for (std::size_t i = 0; i < g.size() && !g.exhausted; ++i) {
        g.codec.decode(g.key(i), from);
        std::uint32_t ordinal = 0;
        for_each_outcome([&](EnumeratingDraws& draws) {
            const std::uint32_t this_outcome = ordinal++;
            if (g.exhausted) return;
            step_outcome(g.cfg, from, draws, out, nullptr);
            if (out.faulted) {
                ++g.faulty_transitions;
                return;
            }
            buf.clear();
            try {
                g.codec.encode(out.next, buf);
            } catch (const EngineFault&) {
                ++g.faulty_transitions;
                return;
            }
            if (g.keys->find(buf)) return;
            if (g.size() >= options.max_states) {
                g.exhausted = true;
                return;
            }
            g.keys->insert(buf);
            g.parent.push_back(static_cast<std::uint32_t>(i));
            g.parent_outcome.push_back(this_outcome);
            g.depth.push_back(g.depth[i] + 1);
        });
    }
    return g;
}

std::vector<Transition> successors(const StateGraph& graph, std::size_t index) {
    std::vector<Transition> result;
    const NocState from = graph.state(index);
    Outcome out;
    std::vector<std::uint8_t> buf;
    for_each_outcome([&](EnumeratingDraws& draws) {
        step_outcome(graph.cfg, from, draws, out, nullptr);
        Transition t;
        t.probability = draws.probability();
        t.choices = draws.choices();
        t.faulted = out.faulted;
        if (!out.faulted) {
            buf.clear();
            try {
                graph.codec.encode(out.next, buf);
                if (auto id = graph.keys->find(buf)) t.target = *id;
            } catch (const EngineFault&) {
                t.faulted = true;
            }
        }
        result.push_back(std::move(t));
    });
    return result;
}

// ---------------------------------------------------------------------------
// Property checking

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Reachable: return "reachable";
        case Verdict::Unreachable: return "unreachable";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

struct Finding {
    std::size_t state = 0;
    std::optional<std::vector<int>> choices;  // empty: at the boundary state itself
    Phase phase = Phase::Boundary;
};

std::vector<int> choices_of_outcome(const StateGraph& g, std::size_t from_index, std::uint32_t ordinal) {
    const NocState from = g.state(from_index);
    std::uint32_t seen = 0;
    std::vector<int> found;
    Outcome out;
    for_each_outcome([&](EnumeratingDraws& draws) {
        if (seen++ == ordinal) {
            step_outcome(g.cfg, from, draws, out, nullptr);
            found = draws.choices();
        } else {
            // Draw counts depend only on the start state, so a dry step is
            // needed to learn this combination's shape.
            step_outcome(g.cfg, from, draws, out, nullptr);
        }
    });
    return found;
}

CheckResult build_path(const StateGraph& g, const Finding& f) {
    CheckResult r;
    std::vector<std::size_t> chain;
    for (std::size_t s = f.state; s != StateGraph::kNoParent; s = g.parent[s]) {
        chain.push_back(s);
        if (g.parent[s] == StateGraph::kNoParent) break;
    }
    std::reverse(chain.begin(), chain.end());
    for (std::size_t i = 0; i < chain.size(); ++i) {
        r.states.push_back(g.state(chain[i]));
        if (i > 0) r.choices.push_back(choices_of_outcome(g, chain[i - 1], g.parent_outcome[chain[i]]));
    }
    if (f.choices) r.choices.push_back(*f.choices);
    r.phase = f.phase;
    return r;
}

}  // namespace

std::vector<CheckResult> check_properties(const StateGraph& graph, std::span<const Property> properties) {
    const std::size_t count = properties.size();
    std::vector<std::optional<Finding>> found(count);
    std::size_t open = count;

    NocState from;
    Outcome out;
    std::size_t current = 0;
    EnumeratingDraws* active = nullptr;

    auto evaluate = [&](Phase phase, const NocState& s, const CycleEvents* ev) {
        for (std::size_t p = 0; p < count; ++p) {
            if (found[p]) continue;
            const bool value = properties[p].predicate(Observation{phase, s, ev});
            const bool hit = properties[p].kind == Property::Kind::Invariant ? !value : value;
            if (!hit) continue;
            Finding f;
            f.state = current;
            f.phase = phase;
            if (active != nullptr) f.choices = active->choices();
            found[p] = std::move(f);
            --open;
        }
    };
    const PhaseObserver observer = [&](Phase phase, const NocState& s, const CycleEvents& ev) {
        evaluate(phase, s, &ev);
    };

    for (std::size_t i = 0; i < graph.size() && open > 0; ++i) {
        current = i;
        graph.codec.decode(graph.key(i), from);
        active = nullptr;
        evaluate(Phase::Boundary, from, nullptr);
        for_each_outcome([&](EnumeratingDraws& draws) {
            if (open == 0) return;
            active = &draws;
            step_outcome(graph.cfg, from, draws, out, &observer);
        });
    }

    const bool complete = !graph.exhausted;
    std::vector<CheckResult> results;
    for (std::size_t p = 0; p < count; ++p) {
        CheckResult r;
        const bool invariant = properties[p].kind == Property::Kind::Invariant;
        if (found[p]) {
            r = build_path(graph, *found[p]);
            r.verdict = invariant ? Verdict::Violated : Verdict::Reachable;
        } else if (complete) {
            r.verdict = invariant ? Verdict::Holds : Verdict::Unreachable;
        } else {
            r.verdict = Verdict::Inconclusive;
        }
        r.name = properties[p].name;
        results.push_back(std::move(r));
    }
    return results;
}

CheckResult check_invariant(const StateGraph& graph, Predicate predicate) {
    Property p{"invariant", Property::Kind::Invariant, std::move(predicate)};
    return check_properties(graph, std::span<const Property>(&p, 1)).front();
}

CheckResult check_ef(const StateGraph& graph, Predicate predicate) {
    Property p{"reachable", Property::Kind::Reachable, std::move(predicate)};
    return check_properties(graph, std::span<const Property>(&p, 1)).front();
}

std::vector<NocState> replay(const EngineConfig& cfg, const NocState& start,
                             std::span<const std::vector<int>> choices, const PhaseObserver* observer) {
    const EngineConfig run_cfg = unchecked(cfg);
    std::vector<NocState> states;
    NocState s = start;
    CycleEvents ev;
    StepOptions opts;
    opts.observer = observer;
    for (const auto& c : choices) {
        ScriptedDraws draws(c);
        step_cycle(s, run_cfg, draws, ev, opts);
        if (!draws.exhausted()) throw ContractViolation("replayed transition left draws unused");
        states.push_back(s);
    }
    return states;
}

// ---------------------------------------------------------------------------
// Exact bounded reachability

std::vector<double> exact_reachability_curve(const EngineConfig& cfg, NoiseKind kind, std::uint64_t threshold,
                                             const PsnScope& scope, std::uint64_t horizon,
                                             const ExactOptions& options) {
    std::vector<double> curve(static_cast<std::size_t>(horizon + 1), 0.0);
    if (threshold == 0) {
        std::fill(curve.begin(), curve.end(), 1.0);
        return curve;
    }
    const EngineConfig run_cfg = unchecked(cfg);
    const StateCodec codec(run_cfg);
    const NocState initial = make_initial_state(run_cfg);
    scope.validate(initial.topo);
    const std::uint64_t level = scope.hit_level(initial.topo, threshold);
    if (level > 0xFFFF) throw ConfigError("exact reachability supports thresholds up to 65535");

    std::vector<RouterId> in_scope;
    for (RouterId id = 0; id < initial.topo.size(); ++id) {
        if (scope.matches(initial.topo, id)) in_scope.push_back(id);
    }
    // The inductive rule reads last_activity, so it must be part of the key.
    const bool keep_last = kind == NoiseKind::Inductive;

    auto encode = [&](const NocState& s, std::uint64_t counter, std::string& key) {
        std::vector<std::uint8_t> bytes;
        codec.encode(s, bytes);
        if (keep_last) {
            for (RouterId id : in_scope) bytes.push_back(static_cast<std::uint8_t>(s.router(id).last_activity));
        }
        bytes.push_back(static_cast<std::uint8_t>(counter & 0xFF));
        bytes.push_back(static_cast<std::uint8_t>(counter >> 8));
        key.assign(bytes.begin(), bytes.end());
    };
    auto decode = [&](const std::string& key, NocState& s) -> std::uint64_t {
        std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(key.data()), key.size());
        std::size_t pos = codec.decode(bytes, s);
        if (keep_last) {
            for (RouterId id : in_scope) s.router(id).last_activity = bytes[pos++];
        }
        return static_cast<std::uint64_t>(bytes[pos]) | (static_cast<std::uint64_t>(bytes[pos + 1]) << 8);
    };

    std::unordered_map<std::string, double> current;
    std::unordered_map<std::string, double> next;
    std::string key;
    encode(initial, 0, key);
    current.emplace(key, 1.0);

    double hit = 0.0;
    NocState from;
    Outcome out;
    for (std::uint64_t c = 0; c <= horizon; ++c) {
        next.clear();
        for (const auto& [k, mass] : current) {
            const std::uint64_t counter = decode(k, from);
            for_each_outcome([&](EnumeratingDraws& draws) {
                step_outcome(run_cfg, from, draws, out, nullptr);
                if (out.faulted) throw EngineFault("transition faulted during exact propagation");
                std::uint64_t bumped = counter;
                for (RouterId id : in_scope) {
                    const auto& ev = out.events.routers[static_cast<std::size_t>(id)];
                    bumped += (kind == NoiseKind::Resistive ? ev.resistive : ev.inductive) ? 1 : 0;
                }
                const double p = mass * draws.probability();
                if (bumped >= level) {
                    hit += p;
                    return;
                }
                encode(out.next, bumped, key);
                next[key] += p;
            });
            if (next.size() > options.max_states) {
                throw StateBudgetExceeded("exact propagation exceeded " + std::to_string(options.max_states) +
                                          " states at cycle " + std::to_string(c));
            }
        }
        curve[static_cast<std::size_t>(c)] = std::min(1.0, hit);
        std::swap(current, next);
    }
    return curve;
}

double exact_reachability(const EngineConfig& cfg, NoiseKind kind, std::uint64_t threshold, const PsnScope& scope,
                          std::uint64_t horizon, const ExactOptions& options) {
    return exact_reachability_curve(cfg, kind, threshold, scope, horizon, options).back();
}

}  // namespace noc
