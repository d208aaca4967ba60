#pragma once

#include <cstdint>
#include <random>

namespace hyperwave {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// Independent random stream identified by (seed, index).
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index);

  double uniform();
  double normal();
  std::uint64_t bits() { return engine_(); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace hyperwave
