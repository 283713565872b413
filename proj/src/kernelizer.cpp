#include "kasi/kernelizer.hpp"

#include <algorithm>

namespace kasi {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kMvmBalanced: return "mvm-balanced";
    case Strategy::kMvmGreedy: return "mvm-greedy";
    case Strategy::kKasiBaseline: return "kasi-baseline";
  }
  return "?";
}

bool parse_strategy(const std::string& name, Strategy& out) {
  if (name == "mvm-balanced") out = Strategy::kMvmBalanced;
  else if (name == "mvm-greedy") out = Strategy::kMvmGreedy;
  else if (name == "kasi-baseline") out = Strategy::kKasiBaseline;
  else return false;
  return true;
}

namespace {

struct Fifo {
  std::vector<VertexId> buf;
  std::size_t head = 0;

  bool empty() const { return head >= buf.size(); }
  void push(VertexId v) { buf.push_back(v); }
  VertexId pop() { return buf[head++]; }
  void reset() {
    buf.clear();
    head = 0;
  }
};

class Kernelizer {
 public:
  Kernelizer(const BipartiteGraph& g, Strategy strategy, double slack,
             KernelObserver* obs)
      : g_(MergeGraph::build_from_csr(g, slack)),
        strategy_(strategy),
        obs_(obs),
        n_left_(g.n_left),
        n_right_(g.n_right) {
    const VertexId n = g_.n_total();
    bucket_of_.assign(n, 0);
    hit_count_.assign(n, 0);
    hit_stamp_.assign(n, 0);
    in_mergeable_.assign(n, 0);
    in_boundary_.assign(n, 0);
    ext_mark_.assign(n, 0);
    table_seen_.assign(n, 0);
    merged_into_.assign(n, kNoVertex);
  }

  KernelResult run() {
    for (VertexId v = 0; v < g_.n_total(); ++v) {
      const VertexId d = g_.degree(v);
      if (d == 0) {
        g_.drop_isolated(v);
      } else if (d == 1) {
        bucket_of_[v] = 1;
        q1_.push(v);
      } else if (d == 2) {
        bucket_of_[v] = 2;
        q2_.push(v);
      }
    }
    for (;;) {
      drain_rule1();
      const VertexId u = pop_mergeable();
      if (u != kNoVertex) {
        grow_and_merge(u);
        continue;
      }
      if (!q3_.empty()) {
        advance_round();
        continue;
      }
      break;
    }
    return finish();
  }

 private:
  bool balanced() const { return strategy_ == Strategy::kMvmBalanced; }

  void bucket_update(VertexId v) {
    if (!g_.alive(v)) {
      bucket_of_[v] = 0;
      return;
    }
    const VertexId d = g_.degree(v);
    if (d == 0) {
      g_.drop_isolated(v);
      bucket_of_[v] = 0;
      return;
    }
    std::uint8_t target = 0;
    if (d == 1) target = 1;
    else if (d == 2) target = (balanced() && g_.rnd(v) == round_) ? 3 : 2;
    if (bucket_of_[v] == target) return;
    bucket_of_[v] = target;
    if (target == 1) q1_.push(v);
    else if (target == 2) q2_.push(v);
    else if (target == 3) q3_.push(v);
  }

  void first_live_cell(VertexId u, VertexId& t, VertexId& ou, VertexId& ov) {
    t = kNoVertex;
    for (VertexId x = u; x != kNoVertex; x = g_.record(x).link_next) {
      const VertexRecord& rec = g_.record(x);
      for (CellIndex i = rec.ptr_start; i < rec.ptr_end; ++i) {
        const EdgeCell& c = g_.read_cell(i);
        if (c.target == kNoVertex || !g_.alive(c.target)) continue;
        t = c.target;
        ou = c.orig_u;
        ov = c.orig_v;
        return;
      }
    }
  }

  void drain_rule1() {
    while (!q1_.empty()) {
      const VertexId u = q1_.pop();
      if (bucket_of_[u] != 1) continue;
      bucket_of_[u] = 0;
      if (!g_.alive(u)) continue;
      const VertexId d = g_.degree(u);
      if (d == 0) {
        g_.drop_isolated(u);
        continue;
      }
      if (d != 1) {
        bucket_update(u);
        continue;
      }
      VertexId v = kNoVertex, ou = kNoVertex, ov = kNoVertex;
      first_live_cell(u, v, ou, ov);
      require(v != kNoVertex, "degree-1 vertex has no live cell");
      tree_.r1_edges.push_back({ou, ov});
      ++stats_.r1_matches;

      scratch_.clear();
      g_.for_each_neighbor(v, [&](VertexId w, VertexId, VertexId) {
        if (w != u) scratch_.push_back(w);
      });
      g_.remove_vertex(u);
      g_.remove_vertex(v);
      bucket_of_[v] = 0;
      for (VertexId w : scratch_) bucket_update(w);
    }
  }

  VertexId pop_mergeable() {
    while (!q2_.empty()) {
      const VertexId u = q2_.pop();
      if (bucket_of_[u] != 2) continue;
      if (!g_.alive(u)) {
        bucket_of_[u] = 0;
        continue;
      }
      if (g_.degree(u) != 2) {
        bucket_of_[u] = 0;
        bucket_update(u);
        continue;
      }
      if (balanced() && g_.rnd(u) == round_) {
        bucket_of_[u] = 3;
        q3_.push(u);
        continue;
      }
      bucket_of_[u] = 0;
      return u;
    }
    return kNoVertex;
  }

  void advance_round() {
    std::swap(q2_, q3_);
    q3_.reset();
    ++round_;
    for (std::size_t i = q2_.head; i < q2_.buf.size(); ++i) {
      const VertexId v = q2_.buf[i];
      if (bucket_of_[v] == 3) bucket_of_[v] = 2;
    }
  }

  // One search plus the merge it feeds: Rule 2 on start and every adjacent
  // mergeable vertex the indirect criterion uncovers.
  void grow_and_merge(VertexId start) {
    mergeables_.clear();
    boundaries_.clear();
    const std::uint64_t m_stamp = ++stamp_;
    const std::uint64_t b_stamp = ++stamp_;
    const std::uint64_t h_stamp = ++stamp_;
    mergeables_.push_back(start);
    in_mergeable_[start] = m_stamp;
    const std::size_t rec_begin = tree_.merge_records.size();

    nbr_.clear();
    g_.for_each_neighbor(start, [&](VertexId t, VertexId a, VertexId b) {
      nbr_.emplace_back(t, a, b);
    });
    require(nbr_.size() == 2, "search start is not a degree-2 vertex");
    for (const auto& [t, a, b] : nbr_) {
      boundaries_.push_back(t);
      in_boundary_[t] = b_stamp;
    }
    {
      MergeRecord rec;
      rec.merged_orig = std::get<1>(nbr_[0]);
      rec.edge_a = {std::get<1>(nbr_[0]), std::get<2>(nbr_[0])};
      rec.edge_b = {std::get<1>(nbr_[1]), std::get<2>(nbr_[1])};
      rec.folded0 = std::get<0>(nbr_[0]);
      rec.folded1 = std::get<0>(nbr_[1]);
      tree_.merge_records.push_back(rec);
    }

    bool early_exit = false;
    if (strategy_ != Strategy::kKasiBaseline) {
      for (std::size_t cursor = 0; cursor < boundaries_.size() && !early_exit;
           ++cursor) {
        const VertexId tv = boundaries_[cursor];
        nbr_.clear();
        g_.for_each_neighbor(tv, [&](VertexId t, VertexId a, VertexId b) {
          nbr_.emplace_back(t, a, b);
        });
        for (const auto& [cand, o_tv, o_cand] : nbr_) {
          if (in_mergeable_[cand] == m_stamp) continue;
          const std::uint32_t hits =
              (hit_stamp_[cand] == h_stamp) ? hit_count_[cand] + 1 : 1;
          hit_stamp_[cand] = h_stamp;
          hit_count_[cand] = hits;
          // A vertex with deg - 1 of its neighbors already in the boundary
          // set degrades to degree <= 2 once the set merges.
          if (hits + 1 < g_.degree(cand)) continue;
          if (balanced() && g_.rnd(cand) == round_) continue;

          if (obs_) obs_->on_mergeable_added(cand, boundaries_, g_);
          mergeables_.push_back(cand);
          in_mergeable_[cand] = m_stamp;

          nbr2_.clear();
          g_.for_each_neighbor(cand, [&](VertexId t, VertexId a, VertexId b) {
            nbr2_.emplace_back(t, a, b);
          });
          int fresh_cnt = 0;
          VertexId fresh = kNoVertex, f_ou = kNoVertex, f_ov = kNoVertex;
          for (const auto& [b2, ou2, ov2] : nbr2_) {
            if (in_boundary_[b2] == b_stamp) continue;
            ++fresh_cnt;
            fresh = b2;
            f_ou = ou2;
            f_ov = ov2;
            boundaries_.push_back(b2);
            in_boundary_[b2] = b_stamp;
          }
          require(fresh_cnt <= 1, "mergeability criterion violated");
          if (fresh_cnt == 0) {
            // Every neighbor was already boundary: the whole set merges into
            // one vertex and cand degrades to degree 1. Stop searching.
            early_exit = true;
            break;
          }
          MergeRecord rec;
          rec.merged_orig = o_cand;
          rec.edge_a = {o_cand, o_tv};
          rec.edge_b = {f_ou, f_ov};
          rec.folded0 = fresh;
          tree_.merge_records.push_back(rec);
        }
      }
    }
    if (obs_) obs_->on_search({start, mergeables_, boundaries_, early_exit});

    if (early_exit) {
      const VertexId last = mergeables_.back();
      mergeables_.pop_back();
      in_mergeable_[last] = 0;
    }
    require(boundaries_.size() == mergeables_.size() + 1,
            "boundary/mergeable size imbalance");

    VertexId surv = boundaries_[0];
    for (VertexId b : boundaries_) {
      if (g_.degree(b) > g_.degree(surv) ||
          (g_.degree(b) == g_.degree(surv) && b < surv))
        surv = b;
    }

    ++stats_.merge_ops;
    stats_.merged_count += mergeables_.size();
    if (stats_.per_round_merge_ops.size() < round_)
      stats_.per_round_merge_ops.resize(round_, 0);
    ++stats_.per_round_merge_ops[round_ - 1];
    for (std::size_t i = rec_begin; i < tree_.merge_records.size(); ++i) {
      MergeRecord& r = tree_.merge_records[i];
      r.survivor = surv;
      if (r.folded0 == surv) r.folded0 = kNoVertex;
      if (r.folded1 == surv) r.folded1 = kNoVertex;
    }

    for (VertexId mv : mergeables_) {
      g_.remove_vertex(mv);
      bucket_of_[mv] = 0;
      in_mergeable_[mv] = 0;
    }

    absorbed_.clear();
    tables_.clear();
    table_offsets_.clear();
    for (VertexId b : boundaries_) {
      if (b == surv) continue;
      absorbed_.push_back(b);
      merged_into_[b] = surv;
      table_offsets_.push_back(tables_.size());
      for (VertexId t = b; t != kNoVertex; t = g_.record(t).link_next)
        tables_.push_back(t);
    }
    table_offsets_.push_back(tables_.size());

    // Externals already adjacent to the survivor need no new cell; mark them
    // before the absorbed tables fold in.
    const std::uint64_t ext_stamp = ++stamp_;
    touched_.clear();
    for (VertexId t = surv; t != kNoVertex; t = g_.record(t).link_next) {
      const VertexRecord& rec = g_.record(t);
      for (CellIndex i = rec.ptr_start; i < rec.ptr_end; ++i) {
        const EdgeCell& c = g_.read_cell(i);
        if (c.target == kNoVertex || !g_.alive(c.target)) continue;
        if (ext_mark_[c.target] == ext_stamp) continue;
        ext_mark_[c.target] = ext_stamp;
        g_.set_rnd(c.target, round_);
        touched_.push_back(c.target);
      }
    }

    g_.connect_tables(surv, absorbed_);

    // Each external loses its dead boundary neighbors; the ones not already
    // adjacent to the survivor get one retargeted cell carrying the original
    // endpoints of a cell they shared with an absorbed vertex.
    pending_.clear();
    for (std::size_t bi = 0; bi < absorbed_.size(); ++bi) {
      const std::uint64_t seen = ++stamp_;
      for (std::size_t ti = table_offsets_[bi]; ti < table_offsets_[bi + 1]; ++ti) {
        const VertexRecord& rec = g_.record(tables_[ti]);
        for (CellIndex i = rec.ptr_start; i < rec.ptr_end; ++i) {
          const EdgeCell& c = g_.read_cell(i);
          if (c.target == kNoVertex || !g_.alive(c.target)) continue;
          if (table_seen_[c.target] == seen) continue;
          table_seen_[c.target] = seen;
          g_.decrement_degree(c.target);
          g_.set_rnd(c.target, round_);
          if (ext_mark_[c.target] != ext_stamp) {
            ext_mark_[c.target] = ext_stamp;
            touched_.push_back(c.target);
            pending_.emplace_back(c.target, c.orig_v, c.orig_u);
          }
        }
      }
      bucket_of_[absorbed_[bi]] = 0;
    }
    for (const auto& [v, ou, ov] : pending_) g_.insert_external(v, surv, ou, ov);

    if (obs_)
      obs_->on_merge({round_, g_.is_left(start), surv, boundaries_,
                      static_cast<std::uint64_t>(mergeables_.size())});

    g_.set_rnd(surv, round_);
    bucket_update(surv);
    for (VertexId t : touched_) bucket_update(t);
  }

  VertexId find_root(VertexId v) {
    VertexId r = v;
    while (merged_into_[r] != kNoVertex) r = merged_into_[r];
    while (merged_into_[v] != kNoVertex) {
      const VertexId nxt = merged_into_[v];
      merged_into_[v] = r;
      v = nxt;
    }
    return r;
  }

  KernelResult finish() {
    stats_.rounds = round_;
    stats_.kernel_n = g_.live_count();
    stats_.kernel_m = g_.live_edge_count();
    stats_.edges_touched = g_.cell_reads();
    stats_.per_round_merge_ops.resize(round_, 0);

    KernelResult res;
    res.tree = std::move(tree_);
    res.stats = stats_;
    res.partial = Matching::empty(n_left_, n_right_);
    for (const OrigEdge& e : res.tree.r1_edges) {
      const VertexId left = e.u < n_left_ ? e.u : e.v;
      const VertexId right = (e.u < n_left_ ? e.v : e.u) - n_left_;
      res.partial.add(left, right);
    }
    for (VertexId v = 0; v < g_.n_total(); ++v) {
      const VertexId root = find_root(v);
      if (g_.alive(root)) res.orig_of_super[root].push_back(v);
    }
    res.kernel = std::move(g_);
    return res;
  }

  MergeGraph g_;
  Strategy strategy_;
  KernelObserver* obs_;
  VertexId n_left_;
  VertexId n_right_;

  Fifo q1_, q2_, q3_;
  std::vector<std::uint8_t> bucket_of_;
  std::uint32_t round_ = 1;

  MatchingTree tree_;
  KernelStats stats_;
  std::vector<VertexId> merged_into_;

  std::uint64_t stamp_ = 0;
  std::vector<std::uint32_t> hit_count_;
  std::vector<std::uint64_t> hit_stamp_;
  std::vector<std::uint64_t> in_mergeable_;
  std::vector<std::uint64_t> in_boundary_;
  std::vector<std::uint64_t> ext_mark_;
  std::vector<std::uint64_t> table_seen_;

  std::vector<VertexId> mergeables_, boundaries_, scratch_, touched_, absorbed_,
      tables_;
  std::vector<std::size_t> table_offsets_;
  std::vector<std::tuple<VertexId, VertexId, VertexId>> nbr_, nbr2_, pending_;
};

}  // namespace

KernelResult kernelize(const BipartiteGraph& g, Strategy strategy, double slack,
                       KernelObserver* observer) {
  return Kernelizer(g, strategy, slack, observer).run();
}

}  // namespace kasi
