#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kasi {

using VertexId = std::uint32_t;
using CellIndex = std::uint32_t;

// Sentinel for "no vertex"; also the tombstone marker in edge cells.
inline constexpr VertexId kNoVertex = 0xFFFFFFFFu;

// An edge of the original input graph, in global ids (left vertices keep
// their id, right vertex v is stored as n_left + v).
struct OrigEdge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;

  friend bool operator==(const OrigEdge&, const OrigEdge&) = default;
};

// Smallest r with n <= 2^r. ceil_log2(0) == ceil_log2(1) == 0.
inline std::uint32_t ceil_log2(std::uint64_t n) {
  std::uint32_t r = 0;
  while ((std::uint64_t{1} << r) < n) ++r;
  return r;
}

// Internal-consistency failure (broken invariant, corrupt matching tree).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool cond, const char* what) {
  if (!cond) throw InternalError(what);
}

}  // namespace kasi
