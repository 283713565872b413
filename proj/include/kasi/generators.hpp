#pragma once

#include <cstdint>

#include "kasi/bipartite_graph.hpp"

namespace kasi {

// Parameters of the synthetic family that drives single-vertex merging into
// its quadratic regime. n_per_instance is a power of two >= 8 and bounds the
// vertex count of one instance; `copies` disjoint instances are generated and
// interleaved by a seeded permutation.
struct WorstCaseSpec {
  std::uint64_t n_per_instance = 0;
  std::uint64_t copies = 64;
  std::uint64_t seed = 0;
};

// Each instance is a chain of mergeable vertices u_1..u_k (u_i adjacent to
// boundary vertices b_i and b_{i+1}) where every boundary vertex also
// connects to two shared hubs. Single-vertex merging drags a growing
// super-vertex table through the whole chain (quadratic cell touches) while
// multi-vertex merging discovers the chain in one search. Each middle u_i is
// hidden behind a pendant gadget so that only u_1 and u_k start at degree 2;
// Rule 1 on the gadget's degree-1 satellites releases the rest.
BipartiteGraph gen_worst_case(const WorstCaseSpec& spec);

// Number of chain vertices per instance for a given n_per_instance.
std::uint64_t worst_case_chain_length(std::uint64_t n_per_instance);

// m distinct uniform edges, deterministic per seed.
BipartiteGraph gen_random_bipartite(VertexId n_left, VertexId n_right,
                                    std::uint64_t m, std::uint64_t seed);

}  // namespace kasi
