#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kasi/generators.hpp"
#include "kasi/report.hpp"

namespace {

using namespace kasi;

std::string sniff_format(const std::string& path, const std::string& given) {
  if (!given.empty()) return given;
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".mtx") == 0)
    return "mtx";
  return "edgelist";
}

void write_report(const RunReport& rep, const std::string& out,
                  const std::string& format) {
  if (out.empty()) {
    if (format == "csv")
      emit_report_csv({&rep, 1}, std::cout);
    else
      emit_report_json(rep, std::cout);
  } else {
    emit_report(rep, out, format);
  }
}

void write_matching_file(const Matching& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "# matching size " << m.size << '\n';
  for (VertexId u = 0; u < m.n_left; ++u)
    if (m.mate_left[u] != kNoVertex) out << u << ' ' << m.mate_left[u] << '\n';
}

Matching read_matching_file(const std::string& path, VertexId n_left,
                            VertexId n_right) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Matching m = Matching::empty(n_left, n_right);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream iss(line);
    std::uint64_t u = 0, v = 0;
    if (!(iss >> u >> v))
      throw std::runtime_error("bad matching line " + std::to_string(line_no));
    if (u >= n_left || v >= n_right)
      throw std::runtime_error("matching id out of range at line " +
                               std::to_string(line_no));
    // Set the mates directly; verify_matching reports any inconsistency.
    m.mate_left[u] = static_cast<VertexId>(v);
    m.mate_right[v] = static_cast<VertexId>(u);
    ++m.size;
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Karp-Sipser kernelization and exact bipartite matching toolkit"};
  app.require_subcommand(1);

  std::string input, format, out, report_fmt = "json", matching_path;
  std::string strategy = "mvm-balanced";
  std::uint64_t seed = 0, repeat = 5;
  bool permute = false, oracle = false;
  double slack = 0.0;

  auto add_input_opts = [&](CLI::App* sc) {
    sc->add_option("--input", input, "graph file")->required();
    sc->add_option("--format", format, "input format")
        ->check(CLI::IsMember({"mtx", "edgelist"}));
    sc->add_option("--seed", seed, "seed for --permute");
    sc->add_flag("--permute", permute, "randomly permute vertex ids first");
  };
  auto add_run_opts = [&](CLI::App* sc) {
    sc->add_option("--strategy", strategy, "kernelization strategy")
        ->check(CLI::IsMember(
            {"mvm-balanced", "mvm-greedy", "kasi-baseline", "none"}));
    sc->add_option("--slack", slack, "edge-table gap fraction (default 0)");
    sc->add_option("--out", out, "report path (default stdout)");
    sc->add_option("--report", report_fmt, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* kern = app.add_subcommand("kernelize", "reduce a graph to its kernel");
  add_input_opts(kern);
  add_run_opts(kern);

  CLI::App* match = app.add_subcommand(
      "match", "kernelize, solve the kernel, reconstruct, verify");
  add_input_opts(match);
  add_run_opts(match);
  match->add_flag("--oracle", oracle, "cross-check with the brute-force oracle");
  match->add_option("--matching", matching_path, "write the matching here");

  CLI::App* bench = app.add_subcommand("bench", "repeat the pipeline, report means");
  add_input_opts(bench);
  add_run_opts(bench);
  bench->add_flag("--oracle", oracle, "cross-check with the brute-force oracle");
  bench->add_option("--repeat", repeat, "runs to average (default 5)");

  CLI::App* verify = app.add_subcommand("verify", "check a matching file");
  add_input_opts(verify);
  verify->add_option("--matching", matching_path, "matching file")->required();

  CLI::App* gen = app.add_subcommand("gen", "write synthetic instances");
  gen->require_subcommand(1);
  std::uint64_t gen_n = 1024, gen_copies = 64, gen_m = 0;
  std::uint64_t gen_nl = 0, gen_nr = 0;
  std::string gen_out;
  CLI::App* gw = gen->add_subcommand("worst", "chain/hub family");
  gw->add_option("--n", gen_n, "per-instance size (power of two >= 8)")->required();
  gw->add_option("--copies", gen_copies, "instance count (default 64)");
  gw->add_option("--seed", seed);
  gw->add_option("--out", gen_out, "edge-list output path")->required();
  CLI::App* gr = gen->add_subcommand("random", "uniform random bipartite graph");
  gr->add_option("--n-left", gen_nl)->required();
  gr->add_option("--n-right", gen_nr)->required();
  gr->add_option("--m", gen_m)->required();
  gr->add_option("--seed", seed);
  gr->add_option("--out", gen_out, "edge-list output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      BipartiteGraph g;
      if (gw->parsed()) {
        g = gen_worst_case({gen_n, gen_copies, seed});
      } else {
        g = gen_random_bipartite(static_cast<VertexId>(gen_nl),
                                 static_cast<VertexId>(gen_nr), gen_m, seed);
      }
      write_edge_list(g, gen_out);
      std::cout << "wrote " << gen_out << ": n_left=" << g.n_left
                << " n_right=" << g.n_right << " m=" << g.m << '\n';
      return 0;
    }

    if (verify->parsed()) {
      PipelineConfig cfg;
      const std::string fmt = sniff_format(input, format);
      BipartiteGraph g =
          fmt == "mtx" ? load_matrix_market(input) : load_edge_list(input);
      if (permute) g = random_permute(g, seed);
      Matching m = read_matching_file(matching_path, g.n_left, g.n_right);
      VerifyReport rep = verify_matching(g, m);
      std::cout << (rep.valid ? "valid" : "invalid") << " size=" << rep.size << '\n';
      for (const std::string& v : rep.violations) std::cout << "  " << v << '\n';
      return rep.valid ? 0 : 2;
    }

    PipelineConfig cfg;
    cfg.input = input;
    cfg.format = sniff_format(input, format);
    cfg.strategy = strategy;
    cfg.seed = seed;
    cfg.permute = permute;
    cfg.slack = slack;
    cfg.oracle = oracle;
    cfg.kernel_only = kern->parsed();

    if (bench->parsed()) {
      if (repeat == 0) repeat = 1;
      BipartiteGraph g =
          cfg.format == "mtx" ? load_matrix_market(cfg.input) : load_edge_list(cfg.input);
      RunReport mean;
      for (std::uint64_t i = 0; i < repeat; ++i) {
        RunReport r = run_pipeline(g, cfg);
        if (i == 0) {
          mean = std::move(r);
        } else {
          mean.load_s += r.load_s;
          mean.kernelize_s += r.kernelize_s;
          mean.match_s += r.match_s;
          mean.reconstruct_s += r.reconstruct_s;
          mean.total_s += r.total_s;
          mean.valid = mean.valid && r.valid;
        }
      }
      const double d = static_cast<double>(repeat);
      mean.load_s /= d;
      mean.kernelize_s /= d;
      mean.match_s /= d;
      mean.reconstruct_s /= d;
      mean.total_s /= d;
      write_report(mean, out, report_fmt);
      return mean.valid ? 0 : 2;
    }

    RunReport rep = run_pipeline(cfg);
    if (match->parsed() && !matching_path.empty())
      write_matching_file(rep.matching, matching_path);
    write_report(rep, out, report_fmt);
    return rep.valid ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
