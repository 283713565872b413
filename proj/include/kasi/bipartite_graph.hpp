#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kasi/common.hpp"

namespace kasi {

// Immutable bipartite graph in compressed adjacency form, both directions.
// Adjacency lists are sorted by target id and duplicate-free; every edge
// (u, v) is present in both views. This is the canonical input and oracle
// representation; the mutable MergeGraph is built from it.
struct BipartiteGraph {
  VertexId n_left = 0;
  VertexId n_right = 0;
  std::uint64_t m = 0;
  std::vector<std::uint64_t> left_offsets;   // size n_left + 1
  std::vector<VertexId> left_targets;        // right ids, sorted per vertex
  std::vector<std::uint64_t> right_offsets;  // size n_right + 1
  std::vector<VertexId> right_targets;       // left ids, sorted per vertex

  std::span<const VertexId> left_neighbors(VertexId u) const {
    return {left_targets.data() + left_offsets[u],
            left_targets.data() + left_offsets[u + 1]};
  }
  std::span<const VertexId> right_neighbors(VertexId v) const {
    return {right_targets.data() + right_offsets[v],
            right_targets.data() + right_offsets[v + 1]};
  }
  std::uint64_t left_degree(VertexId u) const {
    return left_offsets[u + 1] - left_offsets[u];
  }
  std::uint64_t right_degree(VertexId v) const {
    return right_offsets[v + 1] - right_offsets[v];
  }
  bool has_edge(VertexId u, VertexId v) const;

  // Deduplicates, sorts, and builds both views. Throws std::invalid_argument
  // on out-of-range endpoints.
  static BipartiteGraph from_edges(VertexId n_left, VertexId n_right,
                                   std::vector<std::pair<VertexId, VertexId>> edges);

  // Full-scan invariant check (symmetric views, sortedness, no duplicates,
  // edge count). Throws InternalError on violation.
  void validate() const;
};

// Parse failure with the offending 1-based line number.
struct ParseError : std::runtime_error {
  enum class Kind { BadHeader, BadToken, IndexOutOfRange, NegativeId, Truncated };

  ParseError(Kind k, std::size_t line_no, const std::string& msg)
      : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"),
        kind(k),
        line(line_no) {}

  Kind kind;
  std::size_t line;
};

// Matrix Market coordinate file, pattern/real/integer. Rows become left
// vertices, columns right vertices; only the nonzero pattern is kept and
// duplicate coordinates collapse. Symmetric/skew-symmetric files are
// mirrored. 1-based indices per the format.
BipartiteGraph load_matrix_market(const std::string& path);

// Plain text edge list, 0-based "u v" lines, '#' comments, optional
// "n_left n_right" header. See docs/FORMATS.md for the exact grammar.
BipartiteGraph load_edge_list(const std::string& path);

// Writes the edge-list format, always with a header; load_edge_list on the
// result reproduces the graph exactly.
void write_edge_list(const BipartiteGraph& g, const std::string& path);

// Splits each vertex of a directed graph into an out-side (left) and an
// in-side (right) copy; arc i->j becomes edge (i, j). Self-loops are fine
// since the two copies are distinct vertices.
BipartiteGraph bipartite_from_directed(
    const std::vector<std::pair<VertexId, VertexId>>& arcs, VertexId n);

// Relabels both sides by independent seeded permutations. Same seed, same
// output; the result is isomorphic to the input.
BipartiteGraph random_permute(const BipartiteGraph& g, std::uint64_t seed);

}  // namespace kasi
