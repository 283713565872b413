#include "kasi/bipartite_graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "kasi/prng.hpp"

namespace kasi {

namespace {

void build_side(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edges,
                bool by_first, std::vector<std::uint64_t>& offsets,
                std::vector<VertexId>& targets) {
  offsets.assign(n + 1, 0);
  for (const auto& [a, b] : edges) ++offsets[(by_first ? a : b) + 1];
  for (VertexId i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(edges.size());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [a, b] : edges) {
    VertexId src = by_first ? a : b;
    targets[cursor[src]++] = by_first ? b : a;
  }
  for (VertexId i = 0; i < n; ++i)
    std::sort(targets.begin() + offsets[i], targets.begin() + offsets[i + 1]);
}

struct LineReader {
  std::istream& in;
  std::size_t line_no = 0;
  std::string buf;

  bool next(std::string& out) {
    while (std::getline(in, buf)) {
      ++line_no;
      out = buf;
      return true;
    }
    return false;
  }
};

bool parse_u64(const std::string& tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> toks;
  std::istringstream iss(s);
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

BipartiteGraph BipartiteGraph::from_edges(
    VertexId n_left, VertexId n_right,
    std::vector<std::pair<VertexId, VertexId>> edges) {
  for (const auto& [u, v] : edges) {
    if (u >= n_left || v >= n_right)
      throw std::invalid_argument("edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  BipartiteGraph g;
  g.n_left = n_left;
  g.n_right = n_right;
  g.m = edges.size();
  build_side(n_left, edges, true, g.left_offsets, g.left_targets);
  build_side(n_right, edges, false, g.right_offsets, g.right_targets);
  return g;
}

bool BipartiteGraph::has_edge(VertexId u, VertexId v) const {
  auto nb = left_neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void BipartiteGraph::validate() const {
  require(left_offsets.size() == static_cast<std::size_t>(n_left) + 1,
          "left offsets size");
  require(right_offsets.size() == static_cast<std::size_t>(n_right) + 1,
          "right offsets size");
  require(left_targets.size() == m && right_targets.size() == m,
          "edge count mismatch between views");
  for (VertexId u = 0; u < n_left; ++u) {
    auto nb = left_neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      require(nb[i] < n_right, "left target out of range");
      require(i == 0 || nb[i - 1] < nb[i], "left adjacency unsorted or duplicated");
    }
  }
  for (VertexId v = 0; v < n_right; ++v) {
    auto nb = right_neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      require(nb[i] < n_left, "right target out of range");
      require(i == 0 || nb[i - 1] < nb[i], "right adjacency unsorted or duplicated");
    }
  }
  // Symmetric views: every (u, v) present in both directions.
  for (VertexId u = 0; u < n_left; ++u) {
    for (VertexId v : left_neighbors(u)) {
      auto nb = right_neighbors(v);
      require(std::binary_search(nb.begin(), nb.end(), u),
              "edge missing from right view");
    }
  }
}

BipartiteGraph load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  LineReader rd{in, 0, {}};

  std::string line;
  if (!rd.next(line))
    throw ParseError(ParseError::Kind::BadHeader, 1, "empty file");
  auto header = split_ws(line);
  if (header.size() < 4 || header[0] != "%%MatrixMarket" ||
      lower(header[1]) != "matrix")
    throw ParseError(ParseError::Kind::BadHeader, rd.line_no,
                     "not a MatrixMarket matrix header");
  if (lower(header[2]) != "coordinate")
    throw ParseError(ParseError::Kind::BadHeader, rd.line_no,
                     "only coordinate format is supported");
  const std::string field = lower(header[3]);
  if (field != "pattern" && field != "real" && field != "integer")
    throw ParseError(ParseError::Kind::BadHeader, rd.line_no,
                     "unsupported field type '" + field + "'");
  std::string symmetry = header.size() > 4 ? lower(header[4]) : "general";
  if (symmetry != "general" && symmetry != "symmetric" &&
      symmetry != "skew-symmetric")
    throw ParseError(ParseError::Kind::BadHeader, rd.line_no,
                     "unsupported symmetry '" + symmetry + "'");

  // Size line, after comments.
  std::uint64_t rows = 0, cols = 0, nnz = 0;
  for (;;) {
    if (!rd.next(line))
      throw ParseError(ParseError::Kind::Truncated, rd.line_no + 1,
                       "missing size line");
    if (!line.empty() && line[0] == '%') continue;
    if (is_blank(line)) continue;
    auto toks = split_ws(line);
    if (toks.size() != 3 || !parse_u64(toks[0], rows) || !parse_u64(toks[1], cols) ||
        !parse_u64(toks[2], nnz))
      throw ParseError(ParseError::Kind::BadHeader, rd.line_no, "malformed size line");
    break;
  }

  const std::size_t want_values = (field == "pattern") ? 2 : 3;
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(nnz);
  std::uint64_t seen = 0;
  while (seen < nnz) {
    if (!rd.next(line))
      throw ParseError(ParseError::Kind::Truncated, rd.line_no + 1,
                       "expected " + std::to_string(nnz) + " entries, got " +
                           std::to_string(seen));
    if (!line.empty() && line[0] == '%') continue;
    if (is_blank(line)) continue;
    auto toks = split_ws(line);
    if (toks.size() < want_values)
      throw ParseError(ParseError::Kind::BadToken, rd.line_no, "short entry line");
    std::uint64_t r = 0, c = 0;
    if (!parse_u64(toks[0], r) || !parse_u64(toks[1], c))
      throw ParseError(ParseError::Kind::BadToken, rd.line_no,
                       "non-numeric coordinate");
    if (r < 1 || r > rows || c < 1 || c > cols)
      throw ParseError(ParseError::Kind::IndexOutOfRange, rd.line_no,
                       "coordinate outside declared bounds");
    edges.emplace_back(static_cast<VertexId>(r - 1), static_cast<VertexId>(c - 1));
    if (symmetry != "general" && r != c)
      edges.emplace_back(static_cast<VertexId>(c - 1), static_cast<VertexId>(r - 1));
    ++seen;
  }

  if (rows >= kNoVertex || cols >= kNoVertex)
    throw ParseError(ParseError::Kind::BadHeader, 2, "matrix too large");
  return BipartiteGraph::from_edges(static_cast<VertexId>(rows),
                                    static_cast<VertexId>(cols), std::move(edges));
}

BipartiteGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  LineReader rd{in, 0, {}};

  struct Row {
    std::uint64_t a, b;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::string line;
  while (rd.next(line)) {
    if (!line.empty() && line[0] == '#') continue;
    if (is_blank(line)) continue;
    auto toks = split_ws(line);
    if (toks.size() != 2)
      throw ParseError(ParseError::Kind::BadToken, rd.line_no,
                       "expected two ids per line");
    for (const auto& t : toks)
      if (t[0] == '-')
        throw ParseError(ParseError::Kind::NegativeId, rd.line_no, "negative id");
    std::uint64_t a = 0, b = 0;
    if (!parse_u64(toks[0], a) || !parse_u64(toks[1], b))
      throw ParseError(ParseError::Kind::BadToken, rd.line_no, "non-numeric token");
    rows.push_back({a, b, rd.line_no});
  }

  // The first data line is a "n_left n_right" header when every subsequent
  // line fits strictly below its values; otherwise it is an edge and the
  // sizes are inferred. See docs/FORMATS.md.
  bool has_header = !rows.empty();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].a >= rows[0].a || rows[i].b >= rows[0].b) {
      has_header = false;
      break;
    }
  }
  std::uint64_t n_left = 0, n_right = 0;
  std::size_t first_edge = 0;
  if (has_header) {
    n_left = rows[0].a;
    n_right = rows[0].b;
    first_edge = 1;
  } else {
    for (const Row& r : rows) {
      n_left = std::max(n_left, r.a + 1);
      n_right = std::max(n_right, r.b + 1);
    }
  }
  if (n_left >= kNoVertex || n_right >= kNoVertex)
    throw ParseError(ParseError::Kind::BadHeader, 1, "graph too large");

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(rows.size() - first_edge);
  for (std::size_t i = first_edge; i < rows.size(); ++i) {
    if (rows[i].a >= n_left || rows[i].b >= n_right)
      throw ParseError(ParseError::Kind::IndexOutOfRange, rows[i].line,
                       "id exceeds declared sizes");
    edges.emplace_back(static_cast<VertexId>(rows[i].a),
                       static_cast<VertexId>(rows[i].b));
  }
  return BipartiteGraph::from_edges(static_cast<VertexId>(n_left),
                                    static_cast<VertexId>(n_right), std::move(edges));
}

void write_edge_list(const BipartiteGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << g.n_left << ' ' << g.n_right << '\n';
  for (VertexId u = 0; u < g.n_left; ++u)
    for (VertexId v : g.left_neighbors(u)) out << u << ' ' << v << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

BipartiteGraph bipartite_from_directed(
    const std::vector<std::pair<VertexId, VertexId>>& arcs, VertexId n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(arcs.size());
  for (const auto& [src, dst] : arcs) {
    if (src >= n || dst >= n) throw std::invalid_argument("arc endpoint out of range");
    edges.emplace_back(src, dst);
  }
  return BipartiteGraph::from_edges(n, n, std::move(edges));
}

BipartiteGraph random_permute(const BipartiteGraph& g, std::uint64_t seed) {
  SplitMix64 root(seed);
  SplitMix64 left_rng = root.split();
  SplitMix64 right_rng = root.split();
  std::vector<std::uint32_t> pl = random_permutation(g.n_left, left_rng);
  std::vector<std::uint32_t> pr = random_permutation(g.n_right, right_rng);

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(g.m);
  for (VertexId u = 0; u < g.n_left; ++u)
    for (VertexId v : g.left_neighbors(u)) edges.emplace_back(pl[u], pr[v]);
  return BipartiteGraph::from_edges(g.n_left, g.n_right, std::move(edges));
}

}  // namespace kasi
