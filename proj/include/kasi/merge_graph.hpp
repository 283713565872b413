#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <tuple>
#include <vector>

#include "kasi/bipartite_graph.hpp"
#include "kasi/common.hpp"

namespace kasi {

// One slot of the shared edge array. `target` is the current neighbor id
// (kNoVertex marks a tombstone or an unused gap slot); the orig_* fields name
// the original-graph endpoints this slot descends from and never change once
// written. orig_u is on the owning vertex's side, orig_v on the target's side.
struct EdgeCell {
  VertexId target = kNoVertex;
  VertexId orig_u = kNoVertex;
  VertexId orig_v = kNoVertex;
};

// Per-vertex record over the edge array. A vertex owns the slot range
// [ptr_start, table_end): cells in [ptr_start, ptr_end) are occupied
// (possibly tombstoned in place) and [ptr_end, table_end) are gaps available
// for insertion. Merged vertices chain their tables through link_next;
// link_last names the chain tail and link_cur the first table that may still
// hold a gap. `degree` is the number of distinct live neighbors reachable
// through the whole chain.
struct VertexRecord {
  CellIndex ptr_start = 0;
  CellIndex ptr_end = 0;
  CellIndex table_end = 0;
  VertexId link_next = kNoVertex;
  VertexId link_cur = kNoVertex;
  VertexId link_last = kNoVertex;
  VertexId degree = 0;
  std::uint32_t rnd = 0;  // round stamp used by the balanced kernelizer
  bool alive = true;
};

// Mutable mergeable storage: vertex records with five pointers over a flat
// edge array, tombstoned deletion, gap insertion, and batch compaction.
// Vertices are addressed by global id: left ids first, then right ids offset
// by n_left. Single-writer; never mutate concurrently.
//
// Deletion is lazy on the neighbor side: remove_vertex flips the vertex dead
// and decrements neighbor degrees, but the cells that point at it stay in
// place and read as tombstones until a compaction reclaims them. Iteration
// resolves such stale cells by checking target liveness.
class MergeGraph {
 public:
  // One record per vertex; each table allocated with ceil(deg * (1 + slack))
  // slots, the unused tail pre-marked as gaps; cells carry orig endpoints
  // equal to their current endpoints.
  static MergeGraph build_from_csr(const BipartiteGraph& g, double slack);

  VertexId n_left() const { return n_left_; }
  VertexId n_right() const { return n_right_; }
  VertexId n_total() const { return static_cast<VertexId>(records_.size()); }
  bool is_left(VertexId v) const { return v < n_left_; }

  bool alive(VertexId v) const { return records_[v].alive; }
  VertexId degree(VertexId v) const { return records_[v].degree; }
  std::uint32_t rnd(VertexId v) const { return records_[v].rnd; }
  void set_rnd(VertexId v, std::uint32_t r) { records_[v].rnd = r; }
  const VertexRecord& record(VertexId v) const { return records_[v]; }

  VertexId live_count() const { return live_total_; }
  // Current edge count = sum of live degrees on one side.
  std::uint64_t live_edge_count() const;

  // Appends each absorbed vertex's chain to kept's chain, marks the absorbed
  // records dead as standalone vertices (their cells stay reachable through
  // kept), trims trailing dead cells of every table in the combined chain,
  // and recomputes kept's degree as the distinct live neighbor count.
  void connect_tables(VertexId kept, std::span<const VertexId> absorbed);

  // Places a cell targeting `target` into the first gap reachable from
  // v.link_cur, compacting (or growing the tail table when compaction
  // provably frees nothing) if every table is full. Increments v's degree.
  // Callers must ensure `target` is not already a live neighbor of v; the
  // kernelizer guarantees this with its mark arrays.
  void insert_external(VertexId v, VertexId target, VertexId orig_u, VertexId orig_v);

  // Reclaims tombstoned and duplicate-target cells across v's chain; live
  // cells keep their slots' relative order and their orig endpoints (the
  // first cell in chain order survives a duplicate collapse). Gaps end up
  // packed at the tail of each table; degree recomputed; link_cur reset.
  void compact(VertexId v);

  // Marks v dead and decrements the degree of each distinct live neighbor.
  // Cost is one walk of v's chain; the reverse cells become resolvable
  // stale cells.
  void remove_vertex(VertexId v);

  // Drops a vertex without touching neighbors (for degree-0 vertices).
  void drop_isolated(VertexId v);

  // Decrement bookkeeping for callers that own both endpoints of a batch
  // update (the kernelizer's merge flow).
  void decrement_degree(VertexId v) { --records_[v].degree; }

  // Visits each distinct live neighbor exactly once in chain order, then
  // slot order, as f(target, orig_u, orig_v). Skips tombstones, stale cells,
  // and duplicates. Not reentrant: the per-call duplicate marks are shared.
  template <typename F>
  void for_each_neighbor(VertexId v, F&& f) {
    const std::uint64_t epoch = ++mark_epoch_;
    for (VertexId t = v; t != kNoVertex; t = records_[t].link_next) {
      const VertexRecord& rec = records_[t];
      for (CellIndex i = rec.ptr_start; i < rec.ptr_end; ++i) {
        const EdgeCell& c = read_cell(i);
        if (c.target == kNoVertex || !records_[c.target].alive) continue;
        if (marks_[c.target] == epoch) continue;
        marks_[c.target] = epoch;
        f(c.target, c.orig_u, c.orig_v);
      }
    }
  }

  // Convenience form of the above.
  std::vector<std::tuple<VertexId, VertexId, VertexId>> neighbors(VertexId v);

  // Raw access for the kernelizer's instrumented chain walks.
  const EdgeCell& read_cell(CellIndex i) {
    ++cell_reads_;
    return cells_[i];
  }
  const EdgeCell& peek_cell(CellIndex i) const { return cells_[i]; }

  // Instrumented cell-read counter: every slot examined by a walk, every
  // table probed by a gap search, every cell moved by compaction or growth.
  std::uint64_t cell_reads() const { return cell_reads_; }

  // One line per live vertex: chain walk with slot indices. Golden-test aid.
  void dump(std::ostream& os) const;

  // Full-scan structural check: symmetric liveness, degree counts, chain
  // acyclicity, link_last correctness, pointer bounds. Test use.
  void check_invariants() const;

 private:
  bool find_gap(VertexId v, CellIndex& out_slot);
  void grow_tail_table(VertexId v);
  std::uint64_t occupied_slots(VertexId v);

  VertexId n_left_ = 0;
  VertexId n_right_ = 0;
  VertexId live_total_ = 0;
  std::vector<VertexRecord> records_;
  std::vector<EdgeCell> cells_;
  std::vector<std::uint64_t> marks_;  // per-vertex dedup stamps
  std::uint64_t mark_epoch_ = 0;
  std::uint64_t cell_reads_ = 0;
};

}  // namespace kasi
