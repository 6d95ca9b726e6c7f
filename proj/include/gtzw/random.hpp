#pragma once

#include <cstdint>
#include <random>

namespace gtzw {

/// Every sampler in the library draws from this engine.
using Rng = std::mt19937_64;

/// Stream `index` of the family rooted at `master_seed`.
///
/// Splitting rule: the stream is an mt19937_64 seeded through
/// std::seed_seq{lo32(master), hi32(master), lo32(index), hi32(index)}.
/// seed_seq's mixing is fixed by the standard, so streams are reproducible
/// across platforms and pairwise decorrelated.
Rng derive_stream(std::uint64_t master_seed, std::uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace gtzw
