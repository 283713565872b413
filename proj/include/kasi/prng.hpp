#pragma once

#include <cstdint>
#include <vector>

namespace kasi {

// SplitMix64. All randomized behavior in this project (permutations,
// generators) is defined in terms of this generator so that identical seeds
// reproduce bit-identical results on every platform. See docs/FORMATS.md.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, n). Plain modulo; the bias is irrelevant here
  // and the result is platform-independent, which std::uniform_int_distribution
  // is not.
  std::uint64_t bounded(std::uint64_t n) { return next() % n; }

  // Derive an independent child stream.
  SplitMix64 split() { return SplitMix64(next()); }

 private:
  std::uint64_t state_;
};

// Fisher-Yates, descending index order.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.bounded(i));
    std::swap(v[i - 1], v[j]);
  }
}

// Identity permutation of size n, shuffled.
std::vector<std::uint32_t> random_permutation(std::uint32_t n, SplitMix64& rng);

}  // namespace kasi
