#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace amerta {

using Rng = std::mt19937_64;

/// Independent generator for (seed, generation, phase, index). Operators draw
/// from their own stream so parallel and sequential runs see the same numbers.
inline Rng make_stream(std::uint64_t seed, std::uint64_t generation, std::uint64_t phase,
                       std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(generation), static_cast<std::uint32_t>(phase),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Uniform integer in [0, n). Plain modulo so results do not depend on the
/// standard library's distribution implementation.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

inline bool coin_flip(Rng& rng) { return (rng() >> 63) != 0; }

inline double uniform_real(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace amerta
