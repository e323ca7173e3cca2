#include "noc/mesh.hpp"

#include <cstdlib>
#include <string>

namespace noc {

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::North: return "N";
        case Direction::East: return "E";
        case Direction::South: return "S";
        case Direction::West: return "W";
        case Direction::Local: return "L";
    }
    return "?";
}

std::optional<Direction> parse_direction(std::string_view name) {
    for (Direction d : kAllDirections) {
        if (to_string(d) == name) return d;
    }
    return std::nullopt;
}

FifoBuffer::FifoBuffer(int capacity) {
    if (capacity < 1 || capacity > kMaxCapacity) {
        throw ConfigError("buffer capacity must be in [1, " + std::to_string(kMaxCapacity) +
                          "], got " + std::to_string(capacity));
    }
    capacity_ = static_cast<std::uint8_t>(capacity);
}

void FifoBuffer::enqueue(Flit f) {
    if (is_full()) throw ContractViolation("enqueue on a full buffer");
    push_unchecked(f);
}

void FifoBuffer::push_unchecked(Flit f) {
    if (size_ >= kStorage) throw EngineFault("buffer storage exhausted");
    items_[size_++] = static_cast<std::uint16_t>(f.dest);
}

Flit FifoBuffer::dequeue() {
    if (empty()) throw ContractViolation("dequeue on an empty buffer");
    Flit front{items_[0]};
    for (int i = 1; i < size_; ++i) items_[static_cast<std::size_t>(i - 1)] = items_[static_cast<std::size_t>(i)];
    --size_;
    items_[size_] = 0;
    return front;
}

Flit FifoBuffer::peek() const {
    if (empty()) throw ContractViolation("peek on an empty buffer");
    return Flit{items_[0]};
}

bool operator==(const FifoBuffer& a, const FifoBuffer& b) {
    if (a.capacity_ != b.capacity_ || a.size_ != b.size_) return false;
    for (int i = 0; i < a.size_; ++i) {
        if (a.items_[static_cast<std::size_t>(i)] != b.items_[static_cast<std::size_t>(i)]) return false;
    }
    return true;
}

Topology::Topology(int n) : n_(n) {}

std::optional<RouterId> Topology::neighbor(RouterId id, Direction d) const {
    const int row = row_of(id);
    const int col = col_of(id);
    switch (d) {
        case Direction::North: return row > 0 ? std::optional<RouterId>(id - n_) : std::nullopt;
        case Direction::South: return row < n_ - 1 ? std::optional<RouterId>(id + n_) : std::nullopt;
        case Direction::East: return col < n_ - 1 ? std::optional<RouterId>(id + 1) : std::nullopt;
        case Direction::West: return col > 0 ? std::optional<RouterId>(id - 1) : std::nullopt;
        case Direction::Local: return std::nullopt;
    }
    return std::nullopt;
}

int Topology::manhattan(RouterId a, RouterId b) const {
    return std::abs(row_of(a) - row_of(b)) + std::abs(col_of(a) - col_of(b));
}

Topology make_topology(int n) {
    if (n < 2) throw ConfigError("mesh side n must be >= 2, got " + std::to_string(n));
    // Flit destinations are stored as 16-bit ids.
    if (n > 255) throw ConfigError("mesh side n must be <= 255, got " + std::to_string(n));
    return Topology(n);
}

std::uint64_t NocState::in_flight() const {
    std::uint64_t total = 0;
    for (const auto& r : routers) {
        for (const auto& p : r.ports) total += static_cast<std::uint64_t>(p.buffer.size());
    }
    return total;
}

NocState make_noc_state(const Topology& topo, int buffer_capacity) {
    NocState s;
    s.topo = topo;
    RouterState proto;
    for (auto& p : proto.ports) p.buffer = FifoBuffer(buffer_capacity);
    s.routers.assign(static_cast<std::size_t>(topo.size()), proto);
    for (RouterId id = 0; id < topo.size(); ++id) {
        for (Direction d : kCompassDirections) {
            s.router(id).ids[static_cast<std::size_t>(index_of(d))] = topo.neighbor(id, d);
        }
    }
    s.router_psn.assign(static_cast<std::size_t>(topo.size()), PsnCounters{});
    s.traffic.assign(static_cast<std::size_t>(topo.size()), TrafficCounters{});
    return s;
}

}  // namespace noc
