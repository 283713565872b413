#include "kasi/report.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <vector>

#include "json.hpp"

namespace kasi {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

RunReport run_pipeline(const BipartiteGraph& g, const PipelineConfig& config) {
  RunReport rep;
  rep.input = config.input;
  rep.strategy = config.strategy;
  rep.seed = config.seed;
  rep.permute = config.permute;
  rep.slack = config.slack;

  const auto t_total = Clock::now();
  const BipartiteGraph* graph = &g;
  BipartiteGraph permuted;
  if (config.permute) {
    permuted = random_permute(g, config.seed);
    graph = &permuted;
  }
  rep.n_left = graph->n_left;
  rep.n_right = graph->n_right;
  rep.m = graph->m;

  if (config.strategy == "none") {
    const auto t0 = Clock::now();
    rep.matching = maximum_matching(*graph);
    rep.match_s = seconds_since(t0);
  } else {
    Strategy strategy;
    if (!parse_strategy(config.strategy, strategy))
      throw std::invalid_argument("unknown strategy '" + config.strategy + "'");
    auto t0 = Clock::now();
    KernelResult kr = kernelize(*graph, strategy, config.slack);
    rep.kernelize_s = seconds_since(t0);
    rep.stats = kr.stats;
    if (config.kernel_only) {
      rep.valid = true;
      rep.total_s = seconds_since(t_total);
      return rep;
    }
    t0 = Clock::now();
    const ViewMatching km = maximum_matching(make_view(kr.kernel));
    rep.match_s = seconds_since(t0);
    t0 = Clock::now();
    rep.matching = reconstruct(km, kr);
    rep.reconstruct_s = seconds_since(t0);
    require(rep.matching.size ==
                km.matching.size + kr.stats.r1_matches + kr.stats.merged_count,
            "size identity violated");
  }

  rep.matching_size = rep.matching.size;
  const VerifyReport vr = verify_matching(*graph, rep.matching);
  rep.valid = vr.valid;
  if (config.oracle && (graph->m <= 24 || (graph->n_left <= 40 && graph->n_right <= 40))) {
    rep.oracle_size = brute_force_max(*graph);
    if (*rep.oracle_size != rep.matching_size) rep.valid = false;
  }
  rep.total_s = seconds_since(t_total);
  return rep;
}

RunReport run_pipeline(const PipelineConfig& config) {
  const auto t0 = Clock::now();
  BipartiteGraph g = config.format == "mtx" ? load_matrix_market(config.input)
                                            : load_edge_list(config.input);
  const double load_s = seconds_since(t0);
  RunReport rep = run_pipeline(g, config);
  rep.load_s = load_s;
  rep.total_s += load_s;
  return rep;
}

void emit_report_json(const RunReport& r, std::ostream& os) {
  nlohmann::ordered_json j;
  j["input"] = r.input;
  j["strategy"] = r.strategy;
  j["seed"] = r.seed;
  j["permute"] = r.permute;
  j["slack"] = r.slack;
  j["graph"] = {{"n_left", r.n_left}, {"n_right", r.n_right}, {"m", r.m}};
  j["times_s"] = {{"load", r.load_s},
                  {"kernelize", r.kernelize_s},
                  {"match", r.match_s},
                  {"reconstruct", r.reconstruct_s},
                  {"total", r.total_s}};
  j["kernel"] = {{"merge_ops", r.stats.merge_ops},
                 {"rounds", r.stats.rounds},
                 {"edges_touched", r.stats.edges_touched},
                 {"r1_matches", r.stats.r1_matches},
                 {"merged_count", r.stats.merged_count},
                 {"kernel_n", r.stats.kernel_n},
                 {"kernel_m", r.stats.kernel_m},
                 {"per_round_merge_ops", r.stats.per_round_merge_ops}};
  j["matching"] = {{"size", r.matching_size}, {"valid", r.valid}};
  if (r.oracle_size)
    j["oracle_size"] = *r.oracle_size;
  else
    j["oracle_size"] = nullptr;
  os << j.dump(2) << '\n';
}

std::string report_csv_header() {
  return "input,strategy,seed,permute,slack,n_left,n_right,m,"
         "load_s,kernelize_s,match_s,reconstruct_s,total_s,"
         "merge_ops,rounds,edges_touched,r1_matches,merged_count,"
         "kernel_n,kernel_m,matching_size,valid";
}

void emit_report_csv(std::span<const RunReport> reports, std::ostream& os) {
  os << report_csv_header() << '\n';
  for (const RunReport& r : reports) {
    os << r.input << ',' << r.strategy << ',' << r.seed << ',' << (r.permute ? 1 : 0)
       << ',' << r.slack << ',' << r.n_left << ',' << r.n_right << ',' << r.m << ','
       << r.load_s << ',' << r.kernelize_s << ',' << r.match_s << ','
       << r.reconstruct_s << ',' << r.total_s << ',' << r.stats.merge_ops << ','
       << r.stats.rounds << ',' << r.stats.edges_touched << ','
       << r.stats.r1_matches << ',' << r.stats.merged_count << ','
       << r.stats.kernel_n << ',' << r.stats.kernel_m << ',' << r.matching_size
       << ',' << (r.valid ? 1 : 0) << '\n';
  }
}

void emit_report(const RunReport& report, const std::string& path,
                 const std::string& format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  if (format == "csv") {
    emit_report_csv({&report, 1}, out);
  } else {
    emit_report_json(report, out);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace kasi
