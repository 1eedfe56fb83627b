#pragma once

#include "bookrank/hash.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace bookrank {

/// Derives an independent mt19937_64 stream from (seed, tag, index).
/// Entity-keyed substreams keep generation deterministic regardless of
/// the order in which entities are visited.
inline std::mt19937_64 sub_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
    std::uint64_t h = fnv1a_u64(seed);
    h = fnv1a(tag, h);
    h = fnv1a_u64(index, h);
    return std::mt19937_64(h);
}

} // namespace bookrank
