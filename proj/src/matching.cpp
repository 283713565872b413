#include "kasi/matching.hpp"

#include <algorithm>
#include <limits>

#include "kasi/kernelizer.hpp"
#include "kasi/merge_graph.hpp"

namespace kasi {

Matching Matching::empty(VertexId n_left, VertexId n_right) {
  Matching m;
  m.n_left = n_left;
  m.n_right = n_right;
  m.mate_left.assign(n_left, kNoVertex);
  m.mate_right.assign(n_right, kNoVertex);
  return m;
}

void Matching::add(VertexId left, VertexId right) {
  require(mate_left[left] == kNoVertex && mate_right[right] == kNoVertex,
          "matching add on an already matched vertex");
  mate_left[left] = right;
  mate_right[right] = left;
  ++size;
}

MatchView make_view(const BipartiteGraph& g) {
  MatchView v;
  v.n_left = g.n_left;
  v.n_right = g.n_right;
  v.offsets = g.left_offsets;
  v.targets = g.left_targets;
  v.origs.reserve(g.m);
  for (VertexId u = 0; u < g.n_left; ++u)
    for (VertexId t : g.left_neighbors(u)) v.origs.push_back({u, g.n_left + t});
  return v;
}

MatchView make_view(MergeGraph& kernel) {
  // Dense re-indexing of the live remainder, in id order.
  std::vector<VertexId> right_index(kernel.n_total(), kNoVertex);
  MatchView v;
  for (VertexId x = kernel.n_left(); x < kernel.n_total(); ++x)
    if (kernel.alive(x)) right_index[x] = v.n_right++;

  v.offsets.push_back(0);
  for (VertexId u = 0; u < kernel.n_left(); ++u) {
    if (!kernel.alive(u)) continue;
    ++v.n_left;
    kernel.for_each_neighbor(u, [&](VertexId t, VertexId ou, VertexId ov) {
      v.targets.push_back(right_index[t]);
      v.origs.push_back({ou, ov});
    });
    v.offsets.push_back(v.targets.size());
  }
  return v;
}

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

// Phase-layered augmentation (breadth-first layering, then depth-first
// augmenting passes along strictly increasing layers).
class HopcroftKarp {
  struct Frame {
    VertexId u;
    std::uint64_t it;
  };

 public:
  explicit HopcroftKarp(const MatchView& view)
      : v_(view),
        pair_left_(view.n_left, kNoVertex),
        pair_right_(view.n_right, kNoVertex),
        dist_(view.n_left, kInf),
        chosen_(view.n_left, 0) {}

  ViewMatching run() {
    while (bfs()) {
      for (VertexId u = 0; u < v_.n_left; ++u)
        if (pair_left_[u] == kNoVertex) dfs(u);
    }
    ViewMatching out;
    out.matching = Matching::empty(v_.n_left, v_.n_right);
    out.orig_of_left.assign(v_.n_left, OrigEdge{});
    for (VertexId u = 0; u < v_.n_left; ++u) {
      if (pair_left_[u] == kNoVertex) continue;
      out.matching.add(u, pair_left_[u]);
      out.orig_of_left[u] = v_.origs[chosen_[u]];
    }
    return out;
  }

 private:
  bool bfs() {
    queue_.clear();
    std::uint32_t free_layer = kInf;
    for (VertexId u = 0; u < v_.n_left; ++u) {
      if (pair_left_[u] == kNoVertex) {
        dist_[u] = 0;
        queue_.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      const VertexId u = queue_[qi];
      if (dist_[u] >= free_layer) continue;
      for (std::uint64_t i = v_.offsets[u]; i < v_.offsets[u + 1]; ++i) {
        const VertexId w = pair_right_[v_.targets[i]];
        if (w == kNoVertex) {
          free_layer = std::min(free_layer, dist_[u] + 1);
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue_.push_back(w);
        }
      }
    }
    free_layer_ = free_layer;
    return free_layer != kInf;
  }

  void dfs(VertexId u0) {
    frames_.clear();
    frames_.push_back({u0, v_.offsets[u0]});
    while (!frames_.empty()) {
      Frame& f = frames_.back();
      bool descended = false;
      while (f.it < v_.offsets[f.u + 1]) {
        const VertexId t = v_.targets[f.it];
        const VertexId w = pair_right_[t];
        if (w == kNoVertex && dist_[f.u] + 1 == free_layer_) {
          // Augment along the whole stack.
          for (const Frame& fr : frames_) {
            const VertexId tt = v_.targets[fr.it];
            pair_left_[fr.u] = tt;
            pair_right_[tt] = fr.u;
            chosen_[fr.u] = fr.it;
          }
          return;
        }
        if (w != kNoVertex && dist_[w] == dist_[f.u] + 1) {
          frames_.push_back({w, v_.offsets[w]});
          descended = true;
          break;
        }
        ++f.it;
      }
      if (descended) continue;
      dist_[f.u] = kInf;
      frames_.pop_back();
      if (!frames_.empty()) ++frames_.back().it;
    }
  }

  const MatchView& v_;
  std::vector<VertexId> pair_left_, pair_right_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::uint64_t> chosen_;
  std::vector<VertexId> queue_;
  std::vector<Frame> frames_;
  std::uint32_t free_layer_ = kInf;
};

}  // namespace

ViewMatching maximum_matching(const MatchView& view) { return HopcroftKarp(view).run(); }

Matching maximum_matching(const BipartiteGraph& g) {
  return maximum_matching(make_view(g)).matching;
}

Matching reconstruct(const ViewMatching& kernel_matching, const KernelResult& result) {
  const VertexId n_left = result.partial.n_left;
  const VertexId n_right = result.partial.n_right;
  std::vector<VertexId> mate(static_cast<std::size_t>(n_left) + n_right, kNoVertex);
  auto match_pair = [&](VertexId a, VertexId b) {
    require(mate[a] == kNoVertex && mate[b] == kNoVertex,
            "reconstruct: endpoint already matched");
    mate[a] = b;
    mate[b] = a;
  };

  const Matching& km = kernel_matching.matching;
  for (VertexId u = 0; u < km.n_left; ++u) {
    if (km.mate_left[u] == kNoVertex) continue;
    const OrigEdge& e = kernel_matching.orig_of_left[u];
    match_pair(e.u, e.v);
  }
  for (const OrigEdge& e : result.tree.r1_edges) match_pair(e.u, e.v);

  const auto& records = result.tree.merge_records;
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (mate[it->edge_a.v] == kNoVertex) {
      match_pair(it->edge_a.u, it->edge_a.v);
    } else if (mate[it->edge_b.v] == kNoVertex) {
      match_pair(it->edge_b.u, it->edge_b.v);
    } else {
      throw InternalError("matching tree corrupt: both boundary endpoints matched");
    }
  }

  Matching out = Matching::empty(n_left, n_right);
  for (VertexId u = 0; u < n_left; ++u)
    if (mate[u] != kNoVertex) out.add(u, mate[u] - n_left);
  return out;
}

VerifyReport verify_matching(const BipartiteGraph& g, const Matching& m) {
  VerifyReport rep;
  auto flag = [&](std::string msg) {
    rep.valid = false;
    rep.violations.push_back(std::move(msg));
  };
  if (m.n_left != g.n_left || m.n_right != g.n_right ||
      m.mate_left.size() != g.n_left || m.mate_right.size() != g.n_right) {
    flag("matching dimensions do not match the graph");
    return rep;
  }
  std::uint64_t count = 0;
  for (VertexId u = 0; u < g.n_left; ++u) {
    const VertexId v = m.mate_left[u];
    if (v == kNoVertex) continue;
    ++count;
    if (v >= g.n_right) {
      flag("mate_left[" + std::to_string(u) + "] out of range");
      continue;
    }
    if (m.mate_right[v] != u)
      flag("mates disagree: left " + std::to_string(u) + " vs right " +
           std::to_string(v));
    if (!g.has_edge(u, v))
      flag("matched pair (" + std::to_string(u) + "," + std::to_string(v) +
           ") is not an edge");
  }
  for (VertexId v = 0; v < g.n_right; ++v) {
    const VertexId u = m.mate_right[v];
    if (u == kNoVertex) continue;
    if (u >= g.n_left || m.mate_left[u] != v)
      flag("right vertex " + std::to_string(v) + " matched inconsistently");
  }
  if (count != m.size)
    flag("declared size " + std::to_string(m.size) + " != matched pairs " +
         std::to_string(count));
  rep.size = count;
  return rep;
}

std::uint64_t brute_force_exhaustive(const BipartiteGraph& g) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < g.n_left; ++u)
    for (VertexId v : g.left_neighbors(u)) edges.emplace_back(u, v);
  if (edges.size() > 24)
    throw std::invalid_argument("exhaustive oracle limited to 24 edges");

  // Compact endpoint indices so the used-vertex sets fit in two words.
  std::vector<VertexId> lids, rids;
  for (const auto& [u, v] : edges) {
    lids.push_back(u);
    rids.push_back(v);
  }
  auto compress = [](std::vector<VertexId>& ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  };
  compress(lids);
  compress(rids);
  auto index_of = [](const std::vector<VertexId>& ids, VertexId x) {
    return static_cast<std::uint32_t>(
        std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };

  std::uint64_t best = 0;
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t used_l,
                 std::uint64_t used_r, std::uint64_t taken) -> void {
    best = std::max(best, taken);
    if (i == edges.size()) return;
    if (taken + (edges.size() - i) <= best) return;
    self(self, i + 1, used_l, used_r, taken);
    const std::uint64_t lb = std::uint64_t{1} << index_of(lids, edges[i].first);
    const std::uint64_t rb = std::uint64_t{1} << index_of(rids, edges[i].second);
    if (!(used_l & lb) && !(used_r & rb))
      self(self, i + 1, used_l | lb, used_r | rb, taken + 1);
  };
  rec(rec, 0, 0, 0, 0);
  return best;
}

std::uint64_t brute_force_augmenting(const BipartiteGraph& g) {
  if (g.n_left > 40 || g.n_right > 40)
    throw std::invalid_argument("augmenting oracle limited to 40 vertices a side");
  std::vector<VertexId> mate_right(g.n_right, kNoVertex);
  std::vector<bool> visited(g.n_right, false);
  auto try_augment = [&](auto&& self, VertexId u) -> bool {
    for (VertexId v : g.left_neighbors(u)) {
      if (visited[v]) continue;
      visited[v] = true;
      if (mate_right[v] == kNoVertex || self(self, mate_right[v])) {
        mate_right[v] = u;
        return true;
      }
    }
    return false;
  };
  std::uint64_t size = 0;
  for (VertexId u = 0; u < g.n_left; ++u) {
    std::fill(visited.begin(), visited.end(), false);
    if (try_augment(try_augment, u)) ++size;
  }
  return size;
}

std::uint64_t brute_force_max(const BipartiteGraph& g) {
  if (g.m <= 24) return brute_force_exhaustive(g);
  if (g.n_left <= 40 && g.n_right <= 40) return brute_force_augmenting(g);
  throw std::invalid_argument("graph too large for the brute-force oracle");
}

}  // namespace kasi
