#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyngraph/ingest.hpp"
#include "dyngraph/pagerank.hpp"

namespace dyngraph {

enum class Algorithm { Bfs, Sssp, PageRank, TriangleCount, Wcc };
enum class Mode { Static, Incremental, Decremental };

Algorithm parse_algorithm(const std::string& name);
Mode parse_mode(const std::string& name);
const char* algorithm_name(Algorithm algo);
const char* mode_name(Mode mode);

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::Bfs;
  Mode mode = Mode::Incremental;
  double base_fraction = 0.5;
  std::size_t batch_size = 1000;
  std::size_t batch_count = 10;
  std::uint64_t seed = 1;
  double load_factor = 0.6;
  bool hashing = true;
  unsigned width = 32;
  VertexId src = 0;  // compact id
  PageRankOptions pagerank;
  unsigned workers = 1;
  // Unset: tc and wcc symmetrize, the others keep the file's directions.
  std::optional<bool> symmetrize;
  // Corrupts the dynamic result of the first batch so verification must fail.
  bool inject_fault = false;

  void validate() const;
};

struct BatchRow {
  std::size_t batch_idx = 0;
  double t_dynamic_ms = 0;
  double t_static_ms = 0;
  double cum_dynamic = 0;
  double cum_static = 0;
  double s = 0;
  std::string checksum;
  unsigned iterations_dynamic = 0;
  unsigned iterations_static = 0;
};

struct Report {
  ExperimentConfig config;
  std::size_t vertex_n = 0;
  std::size_t base_edges = 0;
  double t_base_static_ms = 0;
  std::string base_checksum;
  std::vector<BatchRow> rows;
};

// FNV-1a over raw bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const void* data, std::size_t size);

// Throws Error(VerificationFailed) as soon as a dynamic result differs from the static recomputation.
Report run_experiment(const ExperimentConfig& config, const EdgeList& input);

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(const std::string& name);
std::string render_report(const Report& report, ReportFormat format);
void write_report(const Report& report, const std::string& path, ReportFormat format);

}  // namespace dyngraph
