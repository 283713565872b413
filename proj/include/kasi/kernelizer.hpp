#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kasi/bipartite_graph.hpp"
#include "kasi/matching.hpp"
#include "kasi/merge_graph.hpp"

namespace kasi {

enum class Strategy {
  kMvmBalanced,   // multi-vertex merging with round-deferred processing
  kMvmGreedy,     // multi-vertex merging, no rounds
  kKasiBaseline,  // classical single-vertex Karp-Sipser
};

const char* strategy_name(Strategy s);
bool parse_strategy(const std::string& name, Strategy& out);

// One Rule-2 merge record. edge_a leads from the consumed vertex to the
// boundary vertex it was discovered through (the already-merged mass),
// edge_b to its one fresh boundary vertex; both are original-graph edges in
// global ids. folded0/folded1 are the representative ids of the boundary
// vertices this record brought into the merge (transitive original sets are
// recoverable by chasing earlier records), with the survivor blanked out.
struct MergeRecord {
  VertexId merged_orig = kNoVertex;  // consumed-side endpoint of edge_a
  OrigEdge edge_a;
  OrigEdge edge_b;
  VertexId survivor = kNoVertex;  // super-vertex id at merge time
  VertexId folded0 = kNoVertex;
  VertexId folded1 = kNoVertex;
};

// LIFO log of everything reconstruction needs: Rule-1 matches as original
// edges, and one MergeRecord per consumed mergeable vertex in discovery
// order. r1_records_at[i] is the number of merge records that existed when
// r1_edges[i] was matched, which places the Rule-1 event on the merge
// timeline during the unwind.
struct MatchingTree {
  std::vector<OrigEdge> r1_edges;
  std::vector<std::uint64_t> r1_records_at;
  std::vector<MergeRecord> merge_records;
};

struct KernelStats {
  std::uint64_t merge_ops = 0;
  std::uint64_t rounds = 1;
  std::uint64_t edges_touched = 0;
  std::uint64_t r1_matches = 0;
  std::uint64_t merged_count = 0;
  std::uint64_t kernel_n = 0;
  std::uint64_t kernel_m = 0;
  std::vector<std::uint64_t> per_round_merge_ops;
};

struct KernelResult {
  MergeGraph kernel;
  MatchingTree tree;
  Matching partial;  // Rule-1 pairs over original ids
  KernelStats stats;
  // Each live kernel vertex -> the original vertices it represents.
  std::map<VertexId, std::vector<VertexId>> orig_of_super;
  // Fold forest: merged_into[b] is the survivor that absorbed boundary
  // vertex b (kNoVertex if never absorbed) and merged_at[b] the index of the
  // merge record that folded it. reconstruct() uses the timestamps to
  // resolve which merged group an original belonged to at any record.
  std::vector<VertexId> merged_into;
  std::vector<std::uint64_t> merged_at;
};

// Test instrumentation hooks. All ids are current merge-graph ids.
struct SearchEvent {
  VertexId start;
  std::vector<VertexId> mergeables;  // in discovery order
  std::vector<VertexId> boundaries;  // in insertion order
  bool early_exit;
};
struct MergeEvent {
  std::uint32_t round;
  bool mergeables_on_left;
  VertexId survivor;
  std::vector<VertexId> boundaries;
  std::uint64_t mergeable_count;
};
class KernelObserver {
 public:
  virtual ~KernelObserver() = default;
  // Fired when v joins the mergeable set, before its neighborhood extends
  // the boundary set. `boundaries` is the boundary set at that moment.
  virtual void on_mergeable_added(VertexId /*v*/,
                                  const std::vector<VertexId>& /*boundaries*/,
                                  MergeGraph& /*g*/) {}
  virtual void on_search(const SearchEvent&) {}
  virtual void on_merge(const MergeEvent&) {}
};

// Runs the Karp-Sipser reduction to exhaustion: Rule 1 on every degree-1
// vertex, Rule 2 via multi-vertex merging (or single-vertex merging under
// the baseline strategy). The returned kernel has no live vertex of degree
// <= 2; degree-0 vertices are dropped unmatched.
KernelResult kernelize(const BipartiteGraph& g, Strategy strategy, double slack,
                       KernelObserver* observer = nullptr);

}  // namespace kasi
