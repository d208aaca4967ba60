#include "rng.hpp"

namespace hyperwave {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Stream::Stream(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

double Stream::uniform() {
  // 53 random bits, never exactly 0
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::normal() { return normal_(engine_); }

}  // namespace hyperwave
