#pragma once

// Explicit-state exploration of the model as a discrete-time Markov chain.
//
// Every probabilistic draw of a cycle is enumerated, so one cycle from a state
// yields a finite set of weighted successors. Keys drop the absolute clock
// (only clk mod the traffic period is kept), which makes the reachable set
// finite for unbounded invariant checking.

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noc/engine.hpp"
#include "noc/psn.hpp"

namespace noc {

/// Canonical byte encoding of the inter-cycle model state: buffer contents,
/// priority lists, generator counters and the clock phase.
class StateCodec {
public:
    explicit StateCodec(const EngineConfig& cfg);

    void encode(const NocState& state, std::vector<std::uint8_t>& out) const;
    std::vector<std::uint8_t> encode(const NocState& state) const;

    /// Decodes one state from the front of `bytes` into a fresh state.
    /// Per-cycle flags and noise counters come back zeroed. Returns bytes read.
    std::size_t decode(std::span<const std::uint8_t> bytes, NocState& out) const;

    int clock_period() const { return period_; }

private:
    NocState blank_;
    int period_ = 0;
    bool counters_ = false;
};

/// Replays a fixed sequence of draw results.
class ScriptedDraws final : public Draws {
public:
    explicit ScriptedDraws(std::vector<int> choices) : choices_(std::move(choices)) {}
    int uniform(int lo, int hi) override;
    bool exhausted() const { return pos_ == choices_.size(); }

private:
    std::vector<int> choices_;
    std::size_t pos_ = 0;
};

/// Walks every combination of draw results of a computation, depth-first.
class EnumeratingDraws final : public Draws {
public:
    int uniform(int lo, int hi) override;

    /// Starts the next replay of the current combination.
    void rewind();
    /// Moves to the next combination; false once all were visited.
    bool advance();
    double probability() const;
    std::vector<int> choices() const;

private:
    std::vector<int> choices_;
    std::vector<std::pair<int, int>> ranges_;
    std::size_t pos_ = 0;
};

class KeyStore;

struct ExploreOptions {
    std::size_t max_states = 5'000'000;
};

struct StateGraph {
    static constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

    StateGraph(const EngineConfig& cfg);
    StateGraph(StateGraph&&) noexcept;
    StateGraph& operator=(StateGraph&&) noexcept;
    ~StateGraph();

    /// Engine config used for every transition (invariant assertions off, so
    /// violations reach the property checker instead of aborting).
    EngineConfig cfg;
    StateCodec codec;
    std::unique_ptr<KeyStore> keys;
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> parent_outcome;
    std::vector<std::uint32_t> depth;
    /// The state budget ran out before the frontier was empty.
    bool exhausted = false;
    /// Transitions that raised an engine fault (only defective models).
    std::size_t faulty_transitions = 0;

    std::size_t size() const;
    std::span<const std::uint8_t> key(std::size_t index) const;
    NocState state(std::size_t index) const;
    std::optional<std::size_t> find(const NocState& state) const;
};

/// Breadth-first search from the initial state.
StateGraph explore(const EngineConfig& cfg, const ExploreOptions& options = {});

struct Transition {
    double probability = 0.0;
    /// Successor's index in the graph; empty if it was never stored
    /// (exhausted graph) or the transition faulted.
    std::optional<std::size_t> target;
    std::vector<int> choices;
    bool faulted = false;
};

/// All weighted successors of a stored state, in enumeration order.
std::vector<Transition> successors(const StateGraph& graph, std::size_t index);

struct Observation {
    Phase phase;
    const NocState& state;
    /// Null at Boundary.
    const CycleEvents* events;
};

using Predicate = std::function<bool(const Observation&)>;

struct Property {
    enum class Kind { Invariant, Reachable };
    std::string name;
    Kind kind = Kind::Invariant;
    /// Invariant: must hold at every observation. Reachable: the target.
    Predicate predicate;
};

enum class Verdict { Holds, Violated, Reachable, Unreachable, Inconclusive };

std::string_view to_string(Verdict v);

struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::Inconclusive;
    /// Boundary states from the initial state to the state the last
    /// transition leaves from (or the offending boundary state).
    std::vector<NocState> states;
    /// Draw results of each transition on the path; one more than
    /// states.size() - 1 when the event happened inside a transition.
    std::vector<std::vector<int>> choices;
    /// Phase inside the last transition, or Boundary.
    Phase phase = Phase::Boundary;
};

/// One pass over every stored state and transition for all properties.
/// A violation or witness found in an exhausted graph is still reported.
std::vector<CheckResult> check_properties(const StateGraph& graph, std::span<const Property> properties);

CheckResult check_invariant(const StateGraph& graph, Predicate predicate);
CheckResult check_ef(const StateGraph& graph, Predicate predicate);

/// Replays a path's transitions from its first state; returns the boundary
/// state after each full transition.
std::vector<NocState> replay(const EngineConfig& cfg, const NocState& start,
                             std::span<const std::vector<int>> choices, const PhaseObserver* observer = nullptr);

struct ExactOptions {
    /// Bound on distinct (state, counter) pairs alive at any cycle.
    std::size_t max_states = 4'000'000;
};

/// P(first hit <= N) for N = 0..horizon, by forward propagation of the exact
/// distribution with the scoped counter capped at `threshold`.
/// Throws StateBudgetExceeded past the size guard.
std::vector<double> exact_reachability_curve(const EngineConfig& cfg, NoiseKind kind, std::uint64_t threshold,
                                             const PsnScope& scope, std::uint64_t horizon,
                                             const ExactOptions& options = {});

double exact_reachability(const EngineConfig& cfg, NoiseKind kind, std::uint64_t threshold, const PsnScope& scope,
                          std::uint64_t horizon, const ExactOptions& options = {});

}  // namespace noc
