#pragma once

#include <cstdint>

namespace nli {

/// Derives an independent child seed from a master seed and an index
/// (splitmix64 finalizer). Used for per-trace and per-resample streams so
/// that parallel evaluation stays deterministic.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace nli
