#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kasi/bipartite_graph.hpp"
#include "kasi/common.hpp"

namespace kasi {

class MergeGraph;
struct KernelResult;

// Per-vertex partner assignment. mate_left[u] is the right id matched to
// left vertex u, or kNoVertex; mate_right is symmetric.
struct Matching {
  VertexId n_left = 0;
  VertexId n_right = 0;
  std::vector<VertexId> mate_left;
  std::vector<VertexId> mate_right;
  std::uint64_t size = 0;

  static Matching empty(VertexId n_left, VertexId n_right);
  void add(VertexId left, VertexId right);
};

// Left-side adjacency snapshot the matcher runs on. Built either from a
// BipartiteGraph (ids are the graph's own, origs are the edge itself) or
// from the live remainder of a MergeGraph (ids are dense kernel indices,
// origs come from the live edge cells).
struct MatchView {
  VertexId n_left = 0;
  VertexId n_right = 0;
  std::vector<std::uint64_t> offsets;  // size n_left + 1
  std::vector<VertexId> targets;       // right view ids
  std::vector<OrigEdge> origs;         // original-graph endpoints per entry
};

MatchView make_view(const BipartiteGraph& g);
MatchView make_view(MergeGraph& kernel);

// Maximum matching plus, per matched left vertex, the original endpoints of
// the edge the augmentation settled on.
struct ViewMatching {
  Matching matching;
  std::vector<OrigEdge> orig_of_left;  // valid where mate_left != kNoVertex
};

// Hopcroft-Karp style phase-layered augmentation. Deterministic given the
// view's adjacency order.
ViewMatching maximum_matching(const MatchView& view);
Matching maximum_matching(const BipartiteGraph& g);

// Extends a maximum matching of the kernel to a maximum matching of the
// original graph: translate matched kernel edges to their original
// endpoints, add the Rule-1 pairs, then unwind the merge records in LIFO
// order. Throws InternalError if a record finds both of its boundary
// endpoints already matched (corrupt tree).
Matching reconstruct(const ViewMatching& kernel_matching, const KernelResult& result);

struct VerifyReport {
  bool valid = true;
  std::uint64_t size = 0;
  std::vector<std::string> violations;
};

// Checks edge membership, mutual-mate consistency, and disjointness.
VerifyReport verify_matching(const BipartiteGraph& g, const Matching& m);

// Independent oracle: exhaustive edge-subset search for m <= 24, otherwise a
// plain per-vertex augmenting search (no phase structure) for sides <= 40.
// Throws std::invalid_argument beyond those limits.
std::uint64_t brute_force_max(const BipartiteGraph& g);

// The two oracle routes, exposed for cross-checking in tests.
std::uint64_t brute_force_exhaustive(const BipartiteGraph& g);
std::uint64_t brute_force_augmenting(const BipartiteGraph& g);

}  // namespace kasi
