#include "kasi/merge_graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace kasi {

namespace {

std::uint64_t cap_of(std::uint64_t deg, double slack) {
  return static_cast<std::uint64_t>(
      std::ceil(static_cast<double>(deg) * (1.0 + slack)));
}

}  // namespace

MergeGraph MergeGraph::build_from_csr(const BipartiteGraph& g, double slack) {
  if (slack < 0.0) throw std::invalid_argument("slack must be >= 0");

  MergeGraph mg;
  mg.n_left_ = g.n_left;
  mg.n_right_ = g.n_right;
  const VertexId n = g.n_left + g.n_right;
  mg.records_.resize(n);
  mg.marks_.assign(n, 0);
  mg.live_total_ = n;

  std::uint64_t total_cells = 0;
  for (VertexId u = 0; u < g.n_left; ++u) total_cells += cap_of(g.left_degree(u), slack);
  for (VertexId v = 0; v < g.n_right; ++v) total_cells += cap_of(g.right_degree(v), slack);
  require(total_cells < kNoVertex, "edge array too large");
  mg.cells_.assign(total_cells, EdgeCell{});

  CellIndex pos = 0;
  auto init_vertex = [&](VertexId id, std::uint64_t deg, auto&& fill) {
    VertexRecord& rec = mg.records_[id];
    rec.ptr_start = pos;
    fill();
    rec.ptr_end = pos;
    pos += static_cast<CellIndex>(cap_of(deg, slack) - deg);
    rec.table_end = pos;
    rec.degree = static_cast<VertexId>(deg);
    rec.link_next = kNoVertex;
    rec.link_cur = id;
    rec.link_last = id;
  };
  for (VertexId u = 0; u < g.n_left; ++u) {
    init_vertex(u, g.left_degree(u), [&] {
      for (VertexId v : g.left_neighbors(u))
        mg.cells_[pos++] = {g.n_left + v, u, g.n_left + v};
    });
  }
  for (VertexId v = 0; v < g.n_right; ++v) {
    const VertexId id = g.n_left + v;
    init_vertex(id, g.right_degree(v), [&] {
      for (VertexId u : g.right_neighbors(v)) mg.cells_[pos++] = {u, id, u};
    });
  }
  return mg;
}

std::uint64_t MergeGraph::live_edge_count() const {
  std::uint64_t sum = 0;
  for (VertexId u = 0; u < n_left_; ++u)
    if (records_[u].alive) sum += records_[u].degree;
  return sum;
}

void MergeGraph::connect_tables(VertexId kept, std::span<const VertexId> absorbed) {
  if (absorbed.empty()) return;
  if (!records_[kept].alive)
    throw std::invalid_argument("connect_tables: kept vertex is dead");
  for (VertexId a : absorbed) {
    if (a == kept) throw std::invalid_argument("connect_tables: kept in absorbed set");
    if (!records_[a].alive)
      throw std::invalid_argument("connect_tables: absorbed vertex is dead");
    if (is_left(a) != is_left(kept))
      throw std::invalid_argument("connect_tables: side mismatch");
  }

  VertexRecord& k = records_[kept];
  for (VertexId a : absorbed) {
    records_[k.link_last].link_next = a;
    k.link_last = records_[a].link_last;
    records_[a].alive = false;
    --live_total_;
  }

  // Trim trailing dead cells of every table in the combined chain, then
  // recount the distinct live neighbors.
  const std::uint64_t epoch = ++mark_epoch_;
  VertexId total = 0;
  for (VertexId t = kept; t != kNoVertex; t = records_[t].link_next) {
    VertexRecord& rec = records_[t];
    while (rec.ptr_end > rec.ptr_start) {
      const EdgeCell& c = read_cell(rec.ptr_end - 1);
      if (c.target != kNoVertex && records_[c.target].alive) break;
      --rec.ptr_end;
    }
    for (CellIndex i = rec.ptr_start; i < rec.ptr_end; ++i) {
      const EdgeCell& c = read_cell(i);
      if (c.target == kNoVertex || !records_[c.target].alive) continue;
      if (marks_[c.target] == epoch) continue;
      marks_[c.target] = epoch;
      ++total;
    }
  }
  k.degree = total;
}

bool MergeGraph::find_gap(VertexId v, CellIndex& out_slot) {
  VertexRecord& head = records_[v];
  VertexId cur = head.link_cur;
  while (cur != kNoVertex) {
    ++cell_reads_;  // one probe per table examined
    VertexRecord& rec = records_[cur];
    if (rec.ptr_end < rec.table_end) {
      head.link_cur = cur;
      out_slot = rec.ptr_end;
      ++rec.ptr_end;
      return true;
    }
    cur = rec.link_next;
    head.link_cur = cur;  // table exhausted, skip it next time
  }
  return false;
}

std::uint64_t MergeGraph::occupied_slots(VertexId v) {
  std::uint64_t occ = 0;
  for (VertexId t = v; t != kNoVertex; t = records_[t].link_next) {
    ++cell_reads_;
    occ += records_[t].ptr_end - records_[t].ptr_start;
  }
  return occ;
}

void MergeGraph::grow_tail_table(VertexId v) {
  VertexRecord& head = records_[v];
  const VertexId tail_id = head.link_last;
  VertexRecord& tail = records_[tail_id];
  const CellIndex old_start = tail.ptr_start;
  const CellIndex old_end = tail.ptr_end;
  const std::uint64_t old_cap = tail.table_end - tail.ptr_start;
  const std::uint64_t want =
      std::max({2 * old_cap, static_cast<std::uint64_t>(head.degree),
                std::uint64_t{4}});
  const std::uint64_t base = cells_.size();
  require(base + want < kNoVertex, "edge array overflow");
  cells_.resize(base + want);

  CellIndex w = static_cast<CellIndex>(base);
  for (CellIndex i = old_start; i < old_end; ++i) {
    const EdgeCell c = read_cell(i);
    if (c.target == kNoVertex || !records_[c.target].alive) continue;
    cells_[w++] = c;
  }
  tail.ptr_start = static_cast<CellIndex>(base);
  tail.ptr_end = w;
  tail.table_end = static_cast<CellIndex>(base + want);
  head.link_cur = tail_id;
}

void MergeGraph::insert_external(VertexId v, VertexId target, VertexId orig_u,
                                 VertexId orig_v) {
  if (!records_[v].alive) throw std::invalid_argument("insert_external: vertex is dead");
  if (!records_[target].alive)
    throw std::invalid_argument("insert_external: target is dead");
  if (is_left(v) == is_left(target))
    throw std::invalid_argument("insert_external: target on same side");

  CellIndex slot = 0;
  if (!find_gap(v, slot)) {
    // A chain whose occupied slots exceed its degree holds dead or duplicate
    // cells, so compaction frees at least one slot; otherwise compaction is
    // futile and the tail table doubles instead.
    if (occupied_slots(v) > records_[v].degree) {
      compact(v);
    } else {
      grow_tail_table(v);
    }
    require(find_gap(v, slot), "no gap after compaction/growth");
  }
  cells_[slot] = {target, orig_u, orig_v};
  ++records_[v].degree;
}

void MergeGraph::compact(VertexId v) {
  if (!records_[v].alive) throw std::invalid_argument("compact: vertex is dead");
  const std::uint64_t epoch = ++mark_epoch_;
  VertexId total = 0;
  for (VertexId t = v; t != kNoVertex; t = records_[t].link_next) {
    VertexRecord& rec = records_[t];
    CellIndex w = rec.ptr_start;
    for (CellIndex i = rec.ptr_start; i < rec.ptr_end; ++i) {
      const EdgeCell c = read_cell(i);
      if (c.target == kNoVertex || !records_[c.target].alive) continue;
      if (marks_[c.target] == epoch) continue;
      marks_[c.target] = epoch;
      cells_[w++] = c;
      ++total;
    }
    for (CellIndex i = w; i < rec.ptr_end; ++i) cells_[i] = EdgeCell{};
    rec.ptr_end = w;
  }
  records_[v].degree = total;
  records_[v].link_cur = v;
}

void MergeGraph::remove_vertex(VertexId v) {
  if (!records_[v].alive) throw std::invalid_argument("remove_vertex: already dead");
  for_each_neighbor(v, [&](VertexId t, VertexId, VertexId) { --records_[t].degree; });
  records_[v].alive = false;
  --live_total_;
}

void MergeGraph::drop_isolated(VertexId v) {
  require(records_[v].alive && records_[v].degree == 0, "drop_isolated misuse");
  records_[v].alive = false;
  --live_total_;
}

std::vector<std::tuple<VertexId, VertexId, VertexId>> MergeGraph::neighbors(VertexId v) {
  std::vector<std::tuple<VertexId, VertexId, VertexId>> out;
  for_each_neighbor(v, [&](VertexId t, VertexId ou, VertexId ov) {
    out.emplace_back(t, ou, ov);
  });
  return out;
}

void MergeGraph::dump(std::ostream& os) const {
  for (VertexId v = 0; v < n_total(); ++v) {
    if (!records_[v].alive) continue;
    const VertexRecord& rec = records_[v];
    os << (is_left(v) ? 'L' : 'R') << v << " deg=" << rec.degree << " rnd=" << rec.rnd
       << " :";
    for (VertexId t = v; t != kNoVertex; t = records_[t].link_next) {
      os << " |";
      const VertexRecord& r2 = records_[t];
      for (CellIndex i = r2.ptr_start; i < r2.ptr_end; ++i) {
        const EdgeCell& c = peek_cell(i);
        os << ' ' << i << ':';
        if (c.target == kNoVertex) {
          os << 'x';
        } else if (!records_[c.target].alive) {
          os << '~' << c.target;
        } else {
          os << c.target << '(' << c.orig_u << ',' << c.orig_v << ')';
        }
      }
    }
    os << '\n';
  }
}

void MergeGraph::check_invariants() const {
  std::vector<std::pair<VertexId, VertexId>> from_left, from_right;
  VertexId live_count = 0;
  for (VertexId v = 0; v < n_total(); ++v) {
    const VertexRecord& rec = records_[v];
    if (!rec.alive) continue;
    ++live_count;

    std::set<VertexId> seen_tables;
    std::set<VertexId> targets;
    VertexId last = v;
    for (VertexId t = v; t != kNoVertex; t = records_[t].link_next) {
      require(seen_tables.insert(t).second, "chain revisits a vertex");
      require(t == v || !records_[t].alive, "absorbed chain member still alive");
      last = t;
      const VertexRecord& r2 = records_[t];
      require(r2.ptr_start <= r2.ptr_end && r2.ptr_end <= r2.table_end &&
                  r2.table_end <= cells_.size(),
              "table pointers out of order");
      for (CellIndex i = r2.ptr_start; i < r2.ptr_end; ++i) {
        const EdgeCell& c = peek_cell(i);
        if (c.target == kNoVertex || !records_[c.target].alive) continue;
        require(is_left(c.target) != is_left(v), "live target on own side");
        targets.insert(c.target);
      }
    }
    require(rec.link_last == last, "link_last does not name the chain tail");
    require(targets.size() == rec.degree, "degree != distinct live neighbors");
    for (VertexId t : targets) {
      if (is_left(v))
        from_left.emplace_back(v, t);
      else
        from_right.emplace_back(t, v);
    }
  }
  require(live_count == live_total_, "live vertex count drifted");
  std::sort(from_left.begin(), from_left.end());
  std::sort(from_right.begin(), from_right.end());
  require(from_left == from_right, "symmetric liveness violated");
}

}  // namespace kasi
