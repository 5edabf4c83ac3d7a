#include "dyngraph/triangle_count.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "dyngraph/lane_engine.hpp"

namespace dyngraph {

namespace {

std::uint64_t intersect(const DynamicGraph& g1, const DynamicGraph& g2, const Edge& e) {
  if (e.src == e.dst) return 0;
  const unsigned width = g1.width();
  LaneRegisters<std::uint64_t> hit{};
  std::uint64_t total = 0;
  for (SlabCursor it = begin(g1, e.src), stop = end(g1, e.src); it != stop; ++it) {
    for (LaneId lane = 0; lane < width; ++lane) {
      hit[lane] = 0;
      if (!it.is_valid_vertex(lane)) continue;
      const VertexId w = it.get(lane);
      if (w != e.src && w != e.dst && g2.search_edge(e.dst, w)) hit[lane] = 1;
    }
    total += group_reduce_sum<std::uint64_t>(std::span(hit).first(width));
  }
  return total;
}

std::vector<Edge> unique_directed(const EdgeBatch& batch) {
  std::vector<Edge> edges = batch.materialized().edges();
  for (Edge& e : edges) e.weight = 1;
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

TriangleDelta tallies(const DynamicGraph& g_after, const DynamicGraph& g_update, const EdgeBatch& batch,
                      const Executor& exec) {
  const std::vector<Edge> edges = unique_directed(batch);
  TriangleDelta t;
  t.s1 = tc_count(g_after, g_after, edges, exec);
  t.s2 = tc_count(g_after, g_update, edges, exec);
  t.s3 = tc_count(g_update, g_update, edges, exec);
  if (t.s1 % 2 != 0 || t.s2 % 2 != 0 || t.s3 % 6 != 0)
    throw Error(Errc::DivisibilityViolation, "tallies s1=" + std::to_string(t.s1) + " s2=" + std::to_string(t.s2) +
                                                 " s3=" + std::to_string(t.s3));
  return t;
}

}  // namespace

std::uint64_t tc_count(const DynamicGraph& g1, const DynamicGraph& g2, std::span<const Edge> edges,
                       const Executor& exec) {
  for (const Edge& e : edges) {
    if (e.src >= g1.vertex_count() || e.dst >= g1.vertex_count() || e.src >= g2.vertex_count() ||
        e.dst >= g2.vertex_count())
      throw Error(Errc::VertexOutOfRange, "edge endpoint outside the graphs");
  }
  std::atomic<std::uint64_t> total{0};
  for_each_stripe(exec, edges.size(), g1.width(), [&](std::size_t first, std::size_t last) {
    std::uint64_t local = 0;
    for (std::size_t i = first; i < last; ++i) local += intersect(g1, g2, edges[i]);
    total.fetch_add(local, std::memory_order_relaxed);
  });
  return total.load();
}

std::uint64_t tc_static(const DynamicGraph& g, const Executor& exec, bool check_symmetric) {
  if (check_symmetric && !g.is_symmetric()) throw Error(Errc::NotSymmetric, "triangle counting needs both orientations");
  const std::vector<Edge> edges = g.edges();
  const std::uint64_t s = tc_count(g, g, edges, exec);
  if (s % 6 != 0) throw Error(Errc::DivisibilityViolation, "static tally " + std::to_string(s) + " is not divisible by 6");
  return s / 6;
}

DynamicGraph graph_from_batch(const EdgeBatch& batch, std::size_t vertex_n, const GraphOptions& options) {
  GraphOptions o = options;
  o.weighted = false;
  o.update_tracking = false;
  const std::vector<Edge> edges = unique_directed(batch);
  std::vector<std::uint32_t> hints(vertex_n, 0);
  for (const Edge& e : edges) {
    if (e.src >= vertex_n || e.dst >= vertex_n) throw Error(Errc::VertexOutOfRange, "batch edge outside the graph");
    ++hints[e.src];
  }
  DynamicGraph g(vertex_n, hints, o);
  EdgeBatch directed;
  for (const Edge& e : edges) directed.add(e.src, e.dst);
  g.insert_edges(directed);
  return g;
}

TriangleDelta tc_incremental(const DynamicGraph& g_after, const DynamicGraph& g_update, const EdgeBatch& batch,
                             const Executor& exec) {
  TriangleDelta t = tallies(g_after, g_update, batch, exec);
  t.delta = static_cast<std::int64_t>(t.s1 / 2) - static_cast<std::int64_t>(t.s2 / 2) +
            static_cast<std::int64_t>(t.s3 / 6);
  return t;
}

TriangleDelta tc_decremental(const DynamicGraph& g_after, const DynamicGraph& g_update, const EdgeBatch& batch,
                             const Executor& exec) {
  TriangleDelta t = tallies(g_after, g_update, batch, exec);
  t.delta = static_cast<std::int64_t>(t.s1 / 2 + t.s2 / 2 + t.s3 / 6);
  return t;
}

}  // namespace dyngraph
