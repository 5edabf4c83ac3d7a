#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dyngraph/error.hpp"
#include "dyngraph/experiment.hpp"
#include "dyngraph/ingest.hpp"

using namespace dyngraph;

namespace {

int info(const std::string& path, const std::string& format) {
  const EdgeList list = parse_edge_list(path, parse_edge_format(format));
  std::size_t loops = 0;
  for (const Edge& e : list.edges) loops += e.src == e.dst;
  std::cout << "format      " << edge_format_name(list.format) << '\n'
            << "vertices    " << list.vertex_n << '\n'
            << "edges       " << list.edges.size() << '\n'
            << "undirected  " << undirected_unique(list.edges).size() << '\n'
            << "self-loops  " << loops << '\n'
            << "weighted    " << (list.weighted ? "yes" : "no") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic graph batch-update experiments"};
  app.require_subcommand(1);

  std::string input_format = "auto";

  auto* info_cmd = app.add_subcommand("info", "Summarize an edge-list file");
  std::string info_path;
  info_cmd->add_option("graph", info_path, "Edge-list file")->required()->check(CLI::ExistingFile);
  info_cmd->add_option("--input-format", input_format, "auto, snap, dimacs-gr or weighted-tsv");

  auto* run_cmd = app.add_subcommand("run", "Run a dynamic-vs-static experiment");
  std::string run_path, algo = "bfs", mode = "incremental", report_path, report_format = "csv";
  ExperimentConfig cfg;
  std::optional<std::uint64_t> src;
  bool no_hash = false;
  std::optional<bool> symmetrize;
  run_cmd->add_option("graph", run_path, "Edge-list file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--input-format", input_format, "auto, snap, dimacs-gr or weighted-tsv");
  run_cmd->add_option("--algo", algo, "bfs, sssp, pr, tc or wcc")->check(CLI::IsMember({"bfs", "sssp", "pr", "tc", "wcc"}));
  run_cmd->add_option("--mode", mode, "static, incremental or decremental")
      ->check(CLI::IsMember({"static", "incremental", "decremental"}));
  run_cmd->add_option("--batch-size", cfg.batch_size, "Edges per batch");
  run_cmd->add_option("--batches", cfg.batch_count, "Number of batches");
  run_cmd->add_option("--base-fraction", cfg.base_fraction, "Fraction of edges in the starting graph")
      ->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--seed", cfg.seed, "Seed for shuffling, weights and hashing");
  run_cmd->add_option("--lf", cfg.load_factor, "Slab load factor in (0, 1]");
  run_cmd->add_flag("--no-hash", no_hash, "One bucket per vertex");
  run_cmd->add_option("--group-width", cfg.width, "Lanes per group (even, 4..64)");
  run_cmd->add_option("--src", src, "Source vertex id as written in the file (bfs, sssp)");
  run_cmd->add_option("--damping", cfg.pagerank.damping, "PageRank damping");
  run_cmd->add_option("--eps", cfg.pagerank.eps, "PageRank L1 error margin");
  run_cmd->add_option("--max-iter", cfg.pagerank.max_iter, "PageRank iteration cap");
  run_cmd->add_option("--report", report_path, "Write the report here instead of stdout");
  run_cmd->add_option("--format", report_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--symmetrize", symmetrize, "Treat the file as undirected (true/false)");
  run_cmd->add_flag("--inject-fault", cfg.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; every other usage error is a plain failure.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*info_cmd) return info(info_path, input_format);

    const EdgeList list = parse_edge_list(run_path, parse_edge_format(input_format));
    cfg.algorithm = parse_algorithm(algo);
    cfg.mode = parse_mode(mode);
    cfg.hashing = !no_hash;
    cfg.symmetrize = symmetrize;
    if (src) {
      cfg.src = list.compact(*src);
      if (cfg.src == kInvalidVertex) throw Error(Errc::ConfigError, "source " + std::to_string(*src) + " is not in the graph");
    } else {
      cfg.src = 0;
    }
    const Report report = run_experiment(cfg, list);
    const ReportFormat format = parse_report_format(report_format);
    if (report_path.empty())
      std::cout << render_report(report, format);
    else
      write_report(report, report_path, format);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::VerificationFailed ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
