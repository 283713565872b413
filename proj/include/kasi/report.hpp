#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "kasi/bipartite_graph.hpp"
#include "kasi/kernelizer.hpp"
#include "kasi/matching.hpp"

namespace kasi {

struct PipelineConfig {
  std::string input;              // path, or a descriptor for in-memory runs
  std::string format = "edgelist";  // "edgelist" or "mtx"
  std::string strategy = "mvm-balanced";  // or mvm-greedy, kasi-baseline, none
  std::uint64_t seed = 0;
  bool permute = false;
  double slack = 0.0;
  bool oracle = false;  // brute-force cross-check (size-limited)
  bool kernel_only = false;  // stop after kernelization
};

struct RunReport {
  std::string input;
  std::string strategy;
  std::uint64_t seed = 0;
  bool permute = false;
  double slack = 0.0;
  VertexId n_left = 0;
  VertexId n_right = 0;
  std::uint64_t m = 0;
  double load_s = 0.0;
  double kernelize_s = 0.0;
  double match_s = 0.0;
  double reconstruct_s = 0.0;
  double total_s = 0.0;
  KernelStats stats;
  std::uint64_t matching_size = 0;
  bool valid = false;
  std::optional<std::uint64_t> oracle_size;
  Matching matching;  // over original ids; not serialized
};

// load -> (permute) -> (kernelize) -> maximum_matching -> (reconstruct)
// -> verify. Strategy "none" matches the original graph directly.
RunReport run_pipeline(const PipelineConfig& config);
// Same, on an already-loaded graph (config.input used as the descriptor).
RunReport run_pipeline(const BipartiteGraph& g, const PipelineConfig& config);

// Stable field names, one JSON object per run.
void emit_report_json(const RunReport& report, std::ostream& os);
// Fixed header plus one row per run.
void emit_report_csv(std::span<const RunReport> reports, std::ostream& os);
std::string report_csv_header();

void emit_report(const RunReport& report, const std::string& path,
                 const std::string& format);

}  // namespace kasi
