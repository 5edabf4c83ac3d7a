#include "dyngraph/sssp.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "dyngraph/lane_engine.hpp"

namespace dyngraph {

namespace {

std::atomic_ref<std::uint64_t> node(SsspTree& tree, VertexId v) { return std::atomic_ref(tree.nodes[v]); }

// Returns true when `candidate` replaced a larger node.
bool fetch_min(std::atomic_ref<std::uint64_t> slot, std::uint64_t candidate, std::uint64_t& old) {
  old = slot.load(std::memory_order_relaxed);
  while (candidate < old) {
    if (slot.compare_exchange_weak(old, candidate, std::memory_order_acq_rel)) return true;
  }
  return false;
}

SsspTree init_tree(const DynamicGraph& g, VertexId src) {
  if (src >= g.vertex_count()) throw Error(Errc::VertexOutOfRange, "source " + std::to_string(src));
  SsspTree tree;
  tree.src = src;
  tree.nodes.assign(g.vertex_count(), SsspTree::kInvalidNode);
  tree.nodes[src] = SsspTree::pack(0, src);
  return tree;
}

void check_tree(const DynamicGraph& g, const SsspTree& tree) {
  if (tree.nodes.size() != g.vertex_count()) throw Error(Errc::ConfigError, "tree does not match graph size");
}

bool relax_edge(SsspTree& tree, const Edge& e) {
  const auto du = static_cast<std::uint32_t>(node(tree, e.src).load(std::memory_order_acquire) >> 32);
  if (du == kInfDistance) return false;
  const std::uint64_t sum = std::uint64_t{du} + e.weight;
  if (sum >= kInfDistance) return false;
  std::uint64_t old;
  return fetch_min(node(tree, e.dst), SsspTree::pack(static_cast<std::uint32_t>(sum), e.src), old);
}

// Collects the out-edges of every listed vertex.
Frontier<Edge> out_edges(const DynamicGraph& g, std::vector<VertexId> vertices, const Executor& exec) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  Frontier<Edge> edges;
  scheme1_for_each(g, exec, vertices,
                   [&](const AdjacentCell& c) { edges.push_back(Edge{c.src, c.dst, c.weight}); });
  return edges;
}

Frontier<Edge> batch_frontier(const DynamicGraph& g, const EdgeBatch& batch) {
  const EdgeBatch directed = batch.materialized();
  Frontier<Edge> frontier;
  for (std::size_t i = 0; i < directed.size(); ++i) {
    const Edge e = directed.edge(i);
    // The stored weight is authoritative when a batch repeats an edge.
    const SearchResult stored = g.search_edge(e.src, e.dst);
    if (stored) frontier.push_back(Edge{e.src, e.dst, g.weighted() ? stored.weight : Weight{1}});
  }
  return frontier;
}

void require_weighted(const DynamicGraph& g) {
  if (!g.weighted()) throw Error(Errc::UnweightedGraph, "SSSP needs a weighted graph");
}

void require_unweighted(const DynamicGraph& g) {
  if (g.weighted()) throw Error(Errc::WeightedGraph, "level-based BFS needs an unweighted graph");
}

void incremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec) {
  check_tree(g, tree);
  sssp_relax(g, tree, batch_frontier(g, batch), exec);
}

void decremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec) {
  check_tree(g, tree);
  if (sssp_invalidate(g, tree, batch) == 0) return;
  sssp_propagate_invalidation(g, tree);
  sssp_relax(g, tree, sssp_decremental_frontier(g, tree, exec), exec);
}

}  // namespace

std::vector<std::uint32_t> SsspTree::distances() const {
  std::vector<std::uint32_t> out(nodes.size());
  for (std::size_t v = 0; v < nodes.size(); ++v) out[v] = static_cast<std::uint32_t>(nodes[v] >> 32);
  return out;
}

std::vector<VertexId> SsspTree::parents() const {
  std::vector<VertexId> out(nodes.size());
  for (std::size_t v = 0; v < nodes.size(); ++v) out[v] = static_cast<VertexId>(nodes[v]);
  return out;
}

void sssp_relax(const DynamicGraph& g, SsspTree& tree, Frontier<Edge> frontier, const Executor& exec) {
  check_tree(g, tree);
  const unsigned width = g.width();
  while (!frontier.empty()) {
    Frontier<VertexId> improved;
    for_each_stripe(exec, frontier.size(), width, [&](std::size_t first, std::size_t last) {
      LaneRegisters<VertexId> dst{};
      LaneRegisters<bool> changed{};
      for (std::size_t i = first; i < last; ++i) {
        const Edge& e = frontier[i];
        dst[i - first] = e.dst;
        changed[i - first] = relax_edge(tree, e);
      }
      group_enqueue_frontier<VertexId>(improved, std::span(dst).first(width), std::span(changed).first(width));
    });
    frontier = out_edges(g, improved.to_vector(), exec);
  }
}

SsspTree sssp_static(const DynamicGraph& g, VertexId src, const Executor& exec) {
  require_weighted(g);
  SsspTree tree = init_tree(g, src);
  sssp_relax(g, tree, out_edges(g, {src}, exec), exec);
  return tree;
}

void sssp_incremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec) {
  require_weighted(g);
  incremental(g, tree, batch, exec);
}

std::size_t sssp_invalidate(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch) {
  check_tree(g, tree);
  const EdgeBatch directed = batch.materialized();
  std::size_t count = 0;
  for (std::size_t i = 0; i < directed.size(); ++i) {
    const VertexId u = directed.src[i];
    const VertexId v = directed.dst[i];
    if (u >= g.vertex_count() || v >= g.vertex_count())
      throw Error(Errc::VertexOutOfRange, "batch edge outside the graph");
    if (v == tree.src || tree.parent(v) != u) continue;
    tree.nodes[v] = SsspTree::kInvalidNode;
    ++count;
  }
  return count;
}

std::size_t sssp_propagate_invalidation(const DynamicGraph& g, SsspTree& tree) {
  check_tree(g, tree);
  const std::size_t n = g.vertex_count();
  std::size_t count = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (v == tree.src || !tree.reachable(v)) continue;
    // Walk toward the source; meeting an invalid ancestor means v lost its path.
    VertexId at = v;
    std::size_t hops = 0;
    while (at != tree.src && tree.reachable(at)) {
      if (++hops > n) throw Error(Errc::CycleDetected, "parent walk from " + std::to_string(v) + " does not end");
      at = tree.parent(at);
    }
    if (at != tree.src) {
      tree.nodes[v] = SsspTree::kInvalidNode;
      ++count;
    }
  }
  return count;
}

Frontier<Edge> sssp_decremental_frontier(const DynamicGraph& g, const SsspTree& tree, const Executor& exec) {
  check_tree(g, tree);
  std::vector<VertexId> valid;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (tree.reachable(v)) valid.push_back(v);
  const BucketPairs pairs = expand_bucket_pairs(g, valid);
  Frontier<Edge> frontier;
  scheme2_for_each(g, exec, pairs.bucket_vertex, pairs.bucket_index, [&](const AdjacentCell& c) {
    if (!tree.reachable(c.dst)) frontier.push_back(Edge{c.src, c.dst, c.weight});
  });
  return frontier;
}

void sssp_decremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec) {
  require_weighted(g);
  decremental(g, tree, batch, exec);
}

SsspTree bfs_static(const DynamicGraph& g, VertexId src, const Executor& exec) {
  require_unweighted(g);
  SsspTree tree = init_tree(g, src);
  std::vector<VertexId> level{src};
  for (std::uint32_t depth = 0; !level.empty(); ++depth) {
    Frontier<VertexId> next;
    // Every lane that claims a vertex first (old distance INF) enqueues it once.
    scheme1_for_each(g, exec, level, [&](const AdjacentCell& c) {
      std::uint64_t old;
      if (fetch_min(node(tree, c.dst), SsspTree::pack(depth + 1, c.src), old) && (old >> 32) == kInfDistance)
        next.push_back(c.dst);
    });
    level = next.to_vector();
  }
  return tree;
}

void bfs_incremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec) {
  require_unweighted(g);
  incremental(g, tree, batch, exec);
}

void bfs_decremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec) {
  require_unweighted(g);
  decremental(g, tree, batch, exec);
}

}  // namespace dyngraph
