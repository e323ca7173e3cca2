#pragma once

#include <cstdint>
#include <random>

namespace noc {

/// Source of the model's probabilistic choices.
///
/// The simulator backs this with a seeded engine; the state explorer backs it
/// with an enumerator that walks every outcome.
class Draws {
public:
    virtual ~Draws() = default;
    /// Uniform integer on the closed range [lo, hi].
    virtual int uniform(int lo, int hi) = 0;
};

class RngDraws final : public Draws {
public:
    explicit RngDraws(std::uint64_t seed);
    /// Independent stream for run `run_index` of a batch seeded with `seed`.
    RngDraws(std::uint64_t seed, std::uint64_t run_index);

    int uniform(int lo, int hi) override;

private:
    std::mt19937_64 engine_;
};

}  // namespace noc
