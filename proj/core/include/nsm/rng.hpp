#pragma once

#include <cstdint>
#include <random>

namespace nsm {

/// Engine used by every generator and corruption channel.
using Rng = std::mt19937_64;

/// splitmix64 finalizer. A bijection on 64-bit integers.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for stream `stream` of experiment seed `base_seed`:
/// mix64(mix64(base_seed) + stream). For a fixed base seed, distinct streams
/// always give distinct seeds. This formula is part of the output contract;
/// changing it changes every published trajectory.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream) noexcept;

}  // namespace nsm
