#pragma once

#include <memory>
#include <vector>

#include "noc/engine.hpp"
#include "noc/traffic.hpp"

namespace noc::testing {

inline EngineConfig make_cfg(int n, int buffer_size = 4, std::shared_ptr<const TrafficPolicy> traffic = nullptr,
                             int thresh = 3) {
    EngineConfig cfg;
    cfg.n = n;
    cfg.buffer_size = buffer_size;
    cfg.activity_thresh = thresh;
    if (traffic) cfg.traffic = std::move(traffic);
    return cfg;
}

inline EngineConfig quiet_cfg(int n, int buffer_size = 4) {
    return make_cfg(n, buffer_size, std::make_shared<NoTraffic>());
}

/// Places a flit as if it had been injected earlier.
inline void place(NocState& s, RouterId at, Direction port, RouterId dest) {
    s.router(at).port(port).buffer.enqueue(Flit{dest});
    ++s.injected;
}

/// Draws that always return the low end of the range.
class LowDraws final : public Draws {
public:
    int uniform(int lo, int) override { return lo; }
};

}  // namespace noc::testing
