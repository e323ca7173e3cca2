#pragma once

// Topology, flits, bounded FIFO buffers and router/NoC state containers.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "noc/errors.hpp"

namespace noc {

using RouterId = int;

enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3, Local = 4 };

inline constexpr int kDirectionCount = 5;
inline constexpr std::array<Direction, 5> kAllDirections{
    Direction::North, Direction::East, Direction::South, Direction::West, Direction::Local};
inline constexpr std::array<Direction, 4> kCompassDirections{
    Direction::North, Direction::East, Direction::South, Direction::West};

constexpr int index_of(Direction d) { return static_cast<int>(d); }

/// The side of the neighbor on which a flit sent in direction `d` arrives.
constexpr Direction opposite(Direction d) {
    switch (d) {
        case Direction::North: return Direction::South;
        case Direction::South: return Direction::North;
        case Direction::East: return Direction::West;
        case Direction::West: return Direction::East;
        case Direction::Local: return Direction::Local;
    }
    return Direction::Local;
}

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view name);

struct Flit {
    RouterId dest = 0;
    friend bool operator==(const Flit&, const Flit&) = default;
};

/// Bounded FIFO of flits with inline storage.
///
/// Storage holds a few slots past the largest supported capacity so that a
/// fault-injected model can overflow a buffer and still be observed.
class FifoBuffer {
public:
    static constexpr int kMaxCapacity = 12;
    static constexpr int kStorage = 16;

    explicit FifoBuffer(int capacity = 4);

    int capacity() const { return capacity_; }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool is_full() const { return size_ >= capacity_; }

    /// Appends at the back. Throws ContractViolation when full.
    void enqueue(Flit f);
    /// Appends regardless of capacity; only bounded by inline storage.
    void push_unchecked(Flit f);
    /// Removes and returns the front. Throws ContractViolation when empty.
    Flit dequeue();
    Flit peek() const;

    Flit operator[](int i) const { return Flit{items_[static_cast<std::size_t>(i)]}; }

    friend bool operator==(const FifoBuffer& a, const FifoBuffer& b);

private:
    std::array<std::uint16_t, kStorage> items_{};
    std::uint8_t size_ = 0;
    std::uint8_t capacity_ = 4;
};

/// One input buffer together with the per-cycle flags of its router port.
struct PortState {
    FifoBuffer buffer;
    bool serviced = false;
    bool is_empty_snap = true;
    bool is_full_snap = false;
    /// Uses of the outgoing channel on this side during the current cycle.
    int used_count = 0;

    friend bool operator==(const PortState&, const PortState&) = default;
};

inline constexpr std::array<Direction, 5> kDefaultPriority = kAllDirections;

struct RouterState {
    std::array<PortState, 5> ports;
    std::array<std::optional<RouterId>, 4> ids;
    std::array<Direction, 5> priority_list = kDefaultPriority;
    int this_activity = 0;
    int last_activity = 0;

    PortState& port(Direction d) { return ports[static_cast<std::size_t>(index_of(d))]; }
    const PortState& port(Direction d) const { return ports[static_cast<std::size_t>(index_of(d))]; }

    /// Local is always connected; compass ports only when a neighbor exists.
    bool connected(Direction d) const {
        return d == Direction::Local || ids[static_cast<std::size_t>(index_of(d))].has_value();
    }

    friend bool operator==(const RouterState&, const RouterState&) = default;
};

/// Row-major n x n mesh: id 0 is the top-left router, id 1 its east neighbor.
class Topology {
public:
    Topology() = default;
    explicit Topology(int n);

    int side() const { return n_; }
    int size() const { return n_ * n_; }
    int row_of(RouterId id) const { return id / n_; }
    int col_of(RouterId id) const { return id % n_; }
    bool contains(RouterId id) const { return id >= 0 && id < size(); }
    std::optional<RouterId> neighbor(RouterId id, Direction d) const;
    int manhattan(RouterId a, RouterId b) const;

    friend bool operator==(const Topology&, const Topology&) = default;

private:
    int n_ = 2;
};

/// Throws ConfigError when n < 2.
Topology make_topology(int n);

struct PsnCounters {
    std::uint64_t resistive = 0;
    std::uint64_t inductive = 0;
    friend bool operator==(const PsnCounters&, const PsnCounters&) = default;
};

/// Per-router state owned by stateful traffic generators.
struct TrafficCounters {
    int burst = 0;
    int sleep = 0;
    friend bool operator==(const TrafficCounters&, const TrafficCounters&) = default;
};

struct NocState {
    Topology topo;
    std::vector<RouterState> routers;
    std::uint64_t clk = 0;
    PsnCounters psn;
    std::vector<PsnCounters> router_psn;
    std::vector<TrafficCounters> traffic;
    std::uint64_t injected = 0;
    std::uint64_t consumed = 0;

    RouterState& router(RouterId id) { return routers[static_cast<std::size_t>(id)]; }
    const RouterState& router(RouterId id) const { return routers[static_cast<std::size_t>(id)]; }

    std::uint64_t in_flight() const;

    friend bool operator==(const NocState&, const NocState&) = default;
};

/// Empty NoC with neighbor ids wired from the topology.
NocState make_noc_state(const Topology& topo, int buffer_capacity);

}  // namespace noc
