#include "gtzw/random.hpp"

namespace gtzw {

Rng derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(master_seed), std::uint32_t(master_seed >> 32),
                    std::uint32_t(index), std::uint32_t(index >> 32)};
  return Rng(seq);
}

}  // namespace gtzw
