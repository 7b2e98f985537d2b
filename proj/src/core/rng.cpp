#include "doflab/rng.hpp"

namespace doflab {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_key(std::uint64_t seed, std::uint64_t replication, StreamRole role,
                       std::uint64_t sub) {
  std::uint64_t h = mix64(seed ^ 0x6A09E667F3BCC908ULL);
  h = mix64(h ^ (replication + 0x9E3779B97F4A7C15ULL));
  h = mix64(h ^ (static_cast<std::uint64_t>(role) * 0xD1B54A32D192ED03ULL));
  h = mix64(h ^ (sub + 0x8CB92BA72F3D8DD7ULL));
  return h;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  const std::uint64_t top = CounterRng::max();
  const std::uint64_t limit = top - (top % bound);
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return x % bound;
}

}  // namespace doflab
