#include "noc/draws.hpp"

#include <array>

namespace noc {

namespace {

std::mt19937_64 seeded_engine(std::initializer_list<std::uint32_t> words) {
    std::seed_seq seq(words);
    return std::mt19937_64(seq);
}

std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

RngDraws::RngDraws(std::uint64_t seed) : engine_(seeded_engine({lo32(seed), hi32(seed)})) {}

// The trailing tag keeps per-run streams disjoint from the single-stream form.
RngDraws::RngDraws(std::uint64_t seed, std::uint64_t run_index)
    : engine_(seeded_engine({lo32(seed), hi32(seed), lo32(run_index), hi32(run_index), 0x52554eu})) {}

int RngDraws::uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

}  // namespace noc
