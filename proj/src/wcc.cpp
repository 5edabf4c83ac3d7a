#include "dyngraph/wcc.hpp"

#include <string>

#include "dyngraph/lane_engine.hpp"

namespace dyngraph {

namespace {

// Each list's smallest neighbor becomes a parent candidate for its vertex.
void min_hooking(const DynamicGraph& g, UnionFind& uf, const Executor& exec) {
  const BucketPairs pairs = all_bucket_pairs(g);
  const unsigned width = g.width();
  exec.parallel_for(pairs.bucket_vertex.size(), [&](std::size_t i) {
    const VertexId v = pairs.bucket_vertex[i];
    LaneRegisters<VertexId> lane_min;
    lane_min.fill(kInvalidVertex);
    for (SlabCursor it = begin_at(g, v, pairs.bucket_index[i]), stop = end_at(g, v, pairs.bucket_index[i]);
         it != stop; ++it) {
      for (LaneId lane = 0; lane < width; ++lane)
        if (it.is_valid_vertex(lane)) lane_min[lane] = std::min(lane_min[lane], it.get(lane));
    }
    const VertexId smallest = group_reduce_min<VertexId>(std::span(lane_min).first(width));
    if (smallest != kInvalidVertex) uf.hook_min(v, smallest);
  });
}

void apply_union(const DynamicGraph& g, UnionFind& uf, const std::vector<VertexId>& vertices, const Executor& exec) {
  scheme1_for_each(g, exec, vertices, [&](const AdjacentCell& c) { uf.union_async(c.src, c.dst); });
}

}  // namespace

WccState wcc_static(const DynamicGraph& g, const Executor& exec, bool check_symmetric) {
  if (check_symmetric && !g.is_symmetric()) throw Error(Errc::NotSymmetric, "WCC needs both orientations");
  const std::size_t n = g.vertex_count();
  WccState state{UnionFind(n), std::vector<std::uint8_t>(n, 0), {}, 0};

  min_hooking(g, state.uf, exec);

  std::vector<VertexId> roots;
  for (VertexId v = 0; v < n; ++v)
    if (state.uf.parent(v) == v) roots.push_back(v);
  apply_union(g, state.uf, roots, exec);
  state.uf.compress_all(exec);

  state.label_count.assign(n, 0);
  for (VertexId v = 0; v < n; ++v) ++state.label_count[state.uf.parent(v)];
  for (VertexId label = 0; label < n; ++label)
    if (state.label_count[label] > state.label_count[state.freq_label]) state.freq_label = label;

  // Edges between two vertices of the dominant label are already merged; the
  // other endpoint covers every edge that leaves it.
  std::vector<VertexId> rest;
  for (VertexId v = 0; v < n; ++v)
    if (state.uf.parent(v) != state.freq_label) rest.push_back(v);
  apply_union(g, state.uf, rest, exec);
  state.uf.compress_all(exec);
  return state;
}

void wcc_incremental(DynamicGraph& g, WccState& state, const EdgeBatch& batch, const Executor& exec) {
  if (!g.tracking()) throw Error(Errc::TrackingDisabled, "incremental WCC needs update tracking");
  if (state.uf.size() != g.vertex_count()) throw Error(Errc::ConfigError, "WCC state does not match graph size");
  EdgeBatch undirected = batch;
  undirected.directed = false;
  g.insert_edges(undirected, exec);

  std::fill(state.to_union.begin(), state.to_union.end(), 0);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    state.to_union[batch.src[i]] = 1;
    state.to_union[batch.dst[i]] = 1;
  }
  std::vector<VertexId> sources;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (state.to_union[v]) sources.push_back(v);

  scheme1_update_for_each(g, exec, sources, [&](const AdjacentCell& c) { state.uf.union_async(c.src, c.dst); });
  state.uf.compress_all(exec);
  g.seal_updates();
}

}  // namespace dyngraph
