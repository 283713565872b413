#include "kasi/prng.hpp"

#include <numeric>

namespace kasi {

std::vector<std::uint32_t> random_permutation(std::uint32_t n, SplitMix64& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  shuffle(p, rng);
  return p;
}

}  // namespace kasi
