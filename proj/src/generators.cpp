#include "kasi/generators.hpp"

#include <stdexcept>
#include <unordered_set>

#include "kasi/prng.hpp"

namespace kasi {

std::uint64_t worst_case_chain_length(std::uint64_t n_per_instance) {
  return std::max<std::uint64_t>(2, (n_per_instance + 3) / 5);
}

BipartiteGraph gen_worst_case(const WorstCaseSpec& spec) {
  const std::uint64_t n = spec.n_per_instance;
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("n_per_instance must be a power of two >= 8");
  if (spec.copies == 0) throw std::invalid_argument("copies must be >= 1");

  // Per instance, with k = chain length and "middles" the hidden mergeables
  // u_2..u_{k-1}:
  //   left:  chain vertices u_1..u_k, hubs h/h2, two pendant satellites per
  //          middle vertex;
  //   right: boundary vertices b_1..b_{k+1}, one gadget vertex w_i per middle.
  // u_i connects b_i and b_{i+1}; every b_j connects both hubs; each middle
  // u_i connects its gadget w_i, which carries two degree-1 satellites. Rule 1
  // on a satellite removes w_i and degrades u_i to degree 2, so only u_1 and
  // u_k are explicit degree-2 vertices in the raw graph. Single-vertex
  // merging then walks a growing super-vertex table once per chain step,
  // while one multi-vertex search collects the entire chain.
  const std::uint64_t k = worst_case_chain_length(n);
  const std::uint64_t middles = k - 2;
  const std::uint64_t left_per = k + 2 + 2 * middles;
  const std::uint64_t right_per = (k + 1) + middles;

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(spec.copies * (7 * k));
  for (std::uint64_t c = 0; c < spec.copies; ++c) {
    const std::uint64_t lo = c * left_per;   // left offset
    const std::uint64_t ro = c * right_per;  // right offset
    const std::uint64_t hub1 = lo + k;
    const std::uint64_t hub2 = lo + k + 1;
    const std::uint64_t pend = lo + k + 2;  // first pendant id
    const std::uint64_t gadget = ro + k + 1;  // first gadget id

    for (std::uint64_t i = 0; i < k; ++i) {
      edges.emplace_back(lo + i, ro + i);
      edges.emplace_back(lo + i, ro + i + 1);
    }
    for (std::uint64_t j = 0; j <= k; ++j) {
      edges.emplace_back(hub1, ro + j);
      edges.emplace_back(hub2, ro + j);
    }
    for (std::uint64_t i = 0; i < middles; ++i) {
      const std::uint64_t u = lo + 1 + i;  // u_2 .. u_{k-1}
      const std::uint64_t w = gadget + i;
      edges.emplace_back(u, w);
      edges.emplace_back(pend + 2 * i, w);
      edges.emplace_back(pend + 2 * i + 1, w);
    }
  }

  BipartiteGraph g = BipartiteGraph::from_edges(
      static_cast<VertexId>(spec.copies * left_per),
      static_cast<VertexId>(spec.copies * right_per), std::move(edges));
  return random_permute(g, spec.seed);
}

BipartiteGraph gen_random_bipartite(VertexId n_left, VertexId n_right,
                                    std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t total =
      static_cast<std::uint64_t>(n_left) * static_cast<std::uint64_t>(n_right);
  if (m > total) throw std::invalid_argument("more edges than vertex pairs");

  // Floyd's sampling: m distinct indices in [0, total).
  SplitMix64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);
  for (std::uint64_t j = total - m; j < total; ++j) {
    std::uint64_t r = rng.bounded(j + 1);
    if (chosen.count(r)) r = j;
    chosen.insert(r);
    edges.emplace_back(static_cast<VertexId>(r / n_right),
                       static_cast<VertexId>(r % n_right));
  }
  return BipartiteGraph::from_edges(n_left, n_right, std::move(edges));
}

}  // namespace kasi
