#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace crimepat {

// mt19937_64 output is fixed by the standard; distributions are not, so bounded
// draws use rejection sampling here to keep splits identical across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1).
  double unit();

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace crimepat
