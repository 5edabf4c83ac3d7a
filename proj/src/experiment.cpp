#include "dyngraph/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <random>
#include <tuple>

#include "dyngraph/dynamic_graph.hpp"
#include "dyngraph/error.hpp"
#include "dyngraph/sssp.hpp"
#include "dyngraph/triangle_count.hpp"
#include "dyngraph/wcc.hpp"

namespace dyngraph {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "bfs") return Algorithm::Bfs;
  if (name == "sssp") return Algorithm::Sssp;
  if (name == "pr") return Algorithm::PageRank;
  if (name == "tc") return Algorithm::TriangleCount;
  if (name == "wcc") return Algorithm::Wcc;
  throw Error(Errc::ConfigError, "unknown algorithm '" + name + "'");
}

Mode parse_mode(const std::string& name) {
  if (name == "static") return Mode::Static;
  if (name == "incremental") return Mode::Incremental;
  if (name == "decremental") return Mode::Decremental;
  throw Error(Errc::ConfigError, "unknown mode '" + name + "'");
}

const char* algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::Bfs: return "bfs";
    case Algorithm::Sssp: return "sssp";
    case Algorithm::PageRank: return "pr";
    case Algorithm::TriangleCount: return "tc";
    case Algorithm::Wcc: return "wcc";
  }
  return "?";
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Static: return "static";
    case Mode::Incremental: return "incremental";
    case Mode::Decremental: return "decremental";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (algorithm == Algorithm::Wcc && mode == Mode::Decremental)
    throw Error(Errc::ConfigError, "decremental WCC is not supported");
  const bool undirected_only = algorithm == Algorithm::TriangleCount || algorithm == Algorithm::Wcc;
  if (undirected_only && symmetrize == false)
    throw Error(Errc::ConfigError, std::string(algorithm_name(algorithm)) + " needs a symmetric graph");
  if (workers == 0) throw Error(Errc::ConfigError, "need at least one worker");
}

std::string fnv1a_hex(const void* data, std::size_t size) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  char text[17];
  std::snprintf(text, sizeof text, "%016llx", static_cast<unsigned long long>(hash));
  return text;
}

namespace {

template <class T>
std::string digest(const std::vector<T>& values) {
  return fnv1a_hex(values.data(), values.size() * sizeof(T));
}

template <class F>
double time_ms(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

[[noreturn]] void mismatch(std::size_t batch, const std::string& what) {
  throw Error(Errc::VerificationFailed, "batch " + std::to_string(batch) + ": " + what);
}

EdgeBatch to_batch(const std::vector<Edge>& edges, bool weighted, bool symmetric, bool reverse = false) {
  EdgeBatch batch;
  batch.directed = !symmetric;
  for (const Edge& e : edges) {
    const Edge oriented = reverse ? Edge{e.dst, e.src, e.weight} : e;
    batch.add(oriented, weighted);
  }
  return batch;
}

DynamicGraph build_graph(std::size_t n, const EdgeBatch& base, const GraphOptions& options, const Executor& exec) {
  std::vector<std::uint32_t> hints(n, 0);
  const EdgeBatch directed = base.materialized();
  for (VertexId u : directed.src) ++hints[u];
  DynamicGraph g(n, hints, options);
  g.insert_edges(base, exec);
  return g;
}

// One algorithm's view of the experiment: mutate, run dynamically, recompute
// statically, compare.
class Runner {
 public:
  virtual ~Runner() = default;
  virtual void build(const EdgeBatch& base) = 0;
  // Returns the checksum of the static result on the base graph.
  virtual std::string baseline() = 0;
  // Applies the mutation to every graph the runner maintains; untimed.
  virtual void apply(const EdgeBatch& batch, Mode mode) = 0;
  virtual void run_dynamic(const EdgeBatch& batch, Mode mode) = 0;
  virtual void run_static() = 0;
  virtual void corrupt() = 0;
  virtual std::string verify(std::size_t batch_idx, BatchRow& row) = 0;
};

class TreeRunner final : public Runner {
 public:
  TreeRunner(std::size_t n, const ExperimentConfig& cfg, GraphOptions options, bool weighted)
      : n_(n), cfg_(cfg), options_(options), exec_(cfg.workers), weighted_(weighted) {
    options_.weighted = weighted;
  }

  void build(const EdgeBatch& base) override { graph_.emplace(build_graph(n_, base, options_, exec_)); }

  std::string baseline() override {
    tree_ = compute_static();
    return digest(tree_.nodes);
  }

  void apply(const EdgeBatch& batch, Mode mode) override {
    if (mode == Mode::Incremental)
      graph_->insert_edges(batch, exec_);
    else
      graph_->delete_edges(batch, exec_);
  }

  void run_dynamic(const EdgeBatch& batch, Mode mode) override {
    if (weighted_) {
      mode == Mode::Incremental ? sssp_incremental(*graph_, tree_, batch, exec_)
                                : sssp_decremental(*graph_, tree_, batch, exec_);
    } else {
      mode == Mode::Incremental ? bfs_incremental(*graph_, tree_, batch, exec_)
                                : bfs_decremental(*graph_, tree_, batch, exec_);
    }
  }

  void run_static() override { fresh_ = compute_static(); }

  void corrupt() override {
    const VertexId v = static_cast<VertexId>((tree_.src + 1) % n_);
    tree_.nodes[v] ^= std::uint64_t{1} << 32;
  }

  std::string verify(std::size_t batch_idx, BatchRow&) override {
    if (tree_.nodes != fresh_.nodes) mismatch(batch_idx, "dynamic tree differs from static recomputation");
    return digest(tree_.nodes);
  }

 private:
  SsspTree compute_static() {
    return weighted_ ? sssp_static(*graph_, cfg_.src, exec_) : bfs_static(*graph_, cfg_.src, exec_);
  }

  std::size_t n_;
  const ExperimentConfig& cfg_;
  GraphOptions options_;
  Executor exec_;
  bool weighted_;
  std::optional<DynamicGraph> graph_;
  SsspTree tree_;
  SsspTree fresh_;
};

class PageRankRunner final : public Runner {
 public:
  PageRankRunner(std::size_t n, const ExperimentConfig& cfg, GraphOptions options)
      : n_(n), cfg_(cfg), options_(options), exec_(cfg.workers) {
    options_.weighted = false;
  }

  // The graph stores incoming edges, so every batch is applied reversed.
  void build(const EdgeBatch& base) override {
    graph_.emplace(build_graph(n_, reversed(base), options_, exec_));
    out_ = out_degrees_from_in_graph(*graph_, exec_);
  }

  std::string baseline() override {
    state_ = pagerank(*graph_, out_, cfg_.pagerank, exec_);
    return digest(state_.pr);
  }

  void apply(const EdgeBatch& batch, Mode mode) override {
    if (mode == Mode::Incremental)
      graph_->insert_edges(reversed(batch), exec_);
    else
      graph_->delete_edges(reversed(batch), exec_);
    out_ = out_degrees_from_in_graph(*graph_, exec_);
  }

  void run_dynamic(const EdgeBatch&, Mode) override { state_ = pagerank_dynamic(*graph_, out_, state_, exec_); }
  void run_static() override { fresh_ = pagerank(*graph_, out_, cfg_.pagerank, exec_); }
  void corrupt() override { state_.pr[0] += 1.0; }

  std::string verify(std::size_t batch_idx, BatchRow& row) override {
    double l1 = 0.0;
    for (std::size_t v = 0; v < n_; ++v) l1 += std::abs(state_.pr[v] - fresh_.pr[v]);
    if (!(l1 <= 10.0 * cfg_.pagerank.eps))
      mismatch(batch_idx, "PageRank L1 distance " + std::to_string(l1) + " exceeds 10*eps");
    row.iterations_dynamic = state_.iterations;
    row.iterations_static = fresh_.iterations;
    // The vectors agree only within tolerance, so the row carries the static digest.
    return digest(fresh_.pr);
  }

 private:
  static EdgeBatch reversed(const EdgeBatch& batch) {
    EdgeBatch out = batch;
    out.src.swap(out.dst);
    return out;
  }

  std::size_t n_;
  const ExperimentConfig& cfg_;
  GraphOptions options_;
  Executor exec_;
  std::optional<DynamicGraph> graph_;
  std::vector<std::uint32_t> out_;
  PageRankState state_;
  PageRankState fresh_;
};

class TriangleRunner final : public Runner {
 public:
  TriangleRunner(std::size_t n, const ExperimentConfig& cfg, GraphOptions options)
      : n_(n), options_(options), exec_(cfg.workers) {
    options_.weighted = false;
  }

  void build(const EdgeBatch& base) override { graph_.emplace(build_graph(n_, base, options_, exec_)); }

  std::string baseline() override {
    count_ = tc_static(*graph_, exec_, false);
    return digest(std::vector<std::uint64_t>{count_});
  }

  void apply(const EdgeBatch& batch, Mode mode) override {
    if (mode == Mode::Incremental)
      graph_->insert_edges(batch, exec_);
    else
      graph_->delete_edges(batch, exec_);
  }

  void run_dynamic(const EdgeBatch& batch, Mode mode) override {
    const DynamicGraph update = graph_from_batch(batch, n_, options_);
    if (mode == Mode::Incremental)
      count_ += static_cast<std::uint64_t>(tc_incremental(*graph_, update, batch, exec_).delta);
    else
      count_ -= static_cast<std::uint64_t>(tc_decremental(*graph_, update, batch, exec_).delta);
  }

  void run_static() override { fresh_ = tc_static(*graph_, exec_, false); }
  void corrupt() override { ++count_; }

  std::string verify(std::size_t batch_idx, BatchRow&) override {
    if (count_ != fresh_)
      mismatch(batch_idx, "triangle count " + std::to_string(count_) + " != static " + std::to_string(fresh_));
    return digest(std::vector<std::uint64_t>{count_});
  }

 private:
  std::size_t n_;
  GraphOptions options_;
  Executor exec_;
  std::optional<DynamicGraph> graph_;
  std::uint64_t count_ = 0;
  std::uint64_t fresh_ = 0;
};

class WccRunner final : public Runner {
 public:
  WccRunner(std::size_t n, const ExperimentConfig& cfg, GraphOptions options)
      : n_(n), options_(options), exec_(cfg.workers) {
    options_.weighted = false;
    options_.update_tracking = true;
  }

  void build(const EdgeBatch& base) override {
    graph_.emplace(build_graph(n_, base, options_, exec_));
    graph_->seal_updates();
  }

  std::string baseline() override {
    state_ = wcc_static(*graph_, exec_, false);
    return digest(state_.labels());
  }

  // wcc_incremental inserts the batch itself.
  void apply(const EdgeBatch&, Mode) override {}
  void run_dynamic(const EdgeBatch& batch, Mode) override { wcc_incremental(*graph_, state_, batch, exec_); }
  void run_static() override { fresh_ = wcc_static(*graph_, exec_, false).labels(); }
  void corrupt() override { state_.uf = UnionFind(n_); }

  std::string verify(std::size_t batch_idx, BatchRow&) override {
    const std::vector<VertexId> labels = state_.labels();
    if (labels != fresh_) mismatch(batch_idx, "component labels differ from static recomputation");
    return digest(labels);
  }

 private:
  std::size_t n_;
  GraphOptions options_;
  Executor exec_;
  std::optional<DynamicGraph> graph_;
  WccState state_;
  std::vector<VertexId> fresh_;
};

}  // namespace

Report run_experiment(const ExperimentConfig& cfg, const EdgeList& input) {
  cfg.validate();
  const std::size_t n = input.vertex_n;
  if (n == 0 || input.edges.empty()) throw Error(Errc::EmptyGraph, "no edges in input");
  const bool tree_algo = cfg.algorithm == Algorithm::Bfs || cfg.algorithm == Algorithm::Sssp;
  if (tree_algo && cfg.src >= n) throw Error(Errc::ConfigError, "source vertex outside the graph");

  const bool symmetric = cfg.symmetrize.value_or(cfg.algorithm == Algorithm::TriangleCount ||
                                                 cfg.algorithm == Algorithm::Wcc);
  const bool weighted = cfg.algorithm == Algorithm::Sssp;

  std::vector<Edge> edges = symmetric ? undirected_unique(input.edges) : input.edges;
  if (weighted && !input.weighted) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<Weight> weight(1, 64);
    for (Edge& e : edges) e.weight = weight(rng);
  }
  if (!symmetric) {
    // Directed inputs may repeat an edge; keep the last copy so batches are sets.
    std::vector<Edge> unique;
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (i + 1 == edges.size() || edges[i + 1].src != edges[i].src || edges[i + 1].dst != edges[i].dst)
        unique.push_back(edges[i]);
    edges.swap(unique);
  }

  const bool is_static = cfg.mode == Mode::Static;
  const BatchSplit split =
      is_static ? BatchSplit{edges, {}}
                : split_batches(edges, cfg.base_fraction, cfg.batch_size, cfg.batch_count, cfg.seed,
                                cfg.mode == Mode::Decremental ? BatchSource::FromBase : BatchSource::Held);

  GraphOptions options;
  options.width = cfg.width;
  options.load_factor = cfg.load_factor;
  options.hashing = cfg.hashing;
  options.hash_seed = cfg.seed;

  std::unique_ptr<Runner> runner;
  switch (cfg.algorithm) {
    case Algorithm::Bfs: runner = std::make_unique<TreeRunner>(n, cfg, options, false); break;
    case Algorithm::Sssp: runner = std::make_unique<TreeRunner>(n, cfg, options, true); break;
    case Algorithm::PageRank: runner = std::make_unique<PageRankRunner>(n, cfg, options); break;
    case Algorithm::TriangleCount: runner = std::make_unique<TriangleRunner>(n, cfg, options); break;
    case Algorithm::Wcc: runner = std::make_unique<WccRunner>(n, cfg, options); break;
  }

  Report report;
  report.config = cfg;
  report.vertex_n = n;
  report.base_edges = split.base.size();
  runner->build(to_batch(split.base, weighted, symmetric));
  report.t_base_static_ms = time_ms([&] { report.base_checksum = runner->baseline(); });

  double cum_dynamic = 0.0;
  double cum_static = 0.0;
  for (std::size_t k = 0; k < split.batches.size(); ++k) {
    const EdgeBatch batch = to_batch(split.batches[k], weighted, symmetric);
    runner->apply(batch, cfg.mode);
    BatchRow row;
    row.batch_idx = k;
    row.t_dynamic_ms = time_ms([&] { runner->run_dynamic(batch, cfg.mode); });
    row.t_static_ms = time_ms([&] { runner->run_static(); });
    if (cfg.inject_fault && k == 0) runner->corrupt();
    row.checksum = runner->verify(k, row);
    cum_dynamic += row.t_dynamic_ms;
    cum_static += row.t_static_ms;
    row.cum_dynamic = cum_dynamic;
    row.cum_static = cum_static;
    row.s = cum_dynamic > 0.0 ? cum_static / cum_dynamic : 0.0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace dyngraph
