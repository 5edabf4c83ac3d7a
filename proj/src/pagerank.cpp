#include "dyngraph/pagerank.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "dyngraph/lane_engine.hpp"

namespace dyngraph {

namespace {

void validate(const PageRankOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0))
    throw Error(Errc::BadDamping, "damping must be in (0, 1), got " + std::to_string(options.damping));
  if (!(options.eps > 0.0) || !std::isfinite(options.eps))
    throw Error(Errc::BadEpsilon, "error margin must be positive, got " + std::to_string(options.eps));
  if (options.max_iter == 0) throw Error(Errc::ConfigError, "max_iter must be at least 1");
}

// Sum of contributions of v's in-neighbors, one slab per group step.
double gather(const DynamicGraph& g, VertexId v, const std::vector<double>& contribution) {
  const unsigned width = g.width();
  LaneRegisters<double> lane_value{};
  double total = 0.0;
  for (SlabCursor it = begin(g, v), stop = end(g, v); it != stop; ++it) {
    for (LaneId lane = 0; lane < width; ++lane)
      lane_value[lane] = it.is_valid_vertex(lane) ? contribution[it.get(lane)] : 0.0;
    total += group_reduce_sum<double>(std::span(lane_value).first(width));
  }
  return total;
}

PageRankState iterate(const DynamicGraph& g, std::span<const std::uint32_t> out, PageRankState state,
                      const Executor& exec) {
  validate(state.options);
  const std::size_t n = g.vertex_count();
  if (out.size() != n) throw Error(Errc::ConfigError, "out-degree table does not match graph size");
  const double d = state.options.damping;
  const double base = (1.0 - d) / static_cast<double>(n);

  std::vector<VertexId> dangling;
  for (VertexId v = 0; v < n; ++v)
    if (out[v] == 0) dangling.push_back(v);

  std::vector<double> next(n);
  state.contribution.assign(n, 0.0);
  state.iterations = 0;
  state.last_delta = 0.0;
  while (state.iterations < state.options.max_iter) {
    exec.parallel_for(n, [&](std::size_t u) {
      state.contribution[u] = out[u] > 0 ? state.pr[u] / out[u] : 0.0;
    });
    double teleport = 0.0;
    for (VertexId v : dangling) teleport += state.pr[v];
    teleport = d * teleport / static_cast<double>(n);

    exec.parallel_for(n, [&](std::size_t v) {
      next[v] = base + d * gather(g, static_cast<VertexId>(v), state.contribution) + teleport;
    });
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) delta += std::abs(next[v] - state.pr[v]);
    state.pr.swap(next);
    ++state.iterations;
    state.last_delta = delta;
    if (delta <= state.options.eps) break;
  }
  return state;
}

}  // namespace

std::vector<std::uint32_t> out_degrees_from_in_graph(const DynamicGraph& g_in, const Executor& exec) {
  std::vector<std::uint32_t> out(g_in.vertex_count(), 0);
  const BucketPairs pairs = all_bucket_pairs(g_in);
  scheme2_for_each(g_in, exec, pairs.bucket_vertex, pairs.bucket_index, [&](const AdjacentCell& c) {
    std::atomic_ref<std::uint32_t>(out[c.dst]).fetch_add(1, std::memory_order_relaxed);
  });
  return out;
}

PageRankState pagerank(const DynamicGraph& g_in, std::span<const std::uint32_t> out_degree,
                       const PageRankOptions& options, const Executor& exec) {
  PageRankState state;
  state.options = options;
  state.pr.assign(g_in.vertex_count(), 1.0 / static_cast<double>(g_in.vertex_count()));
  return iterate(g_in, out_degree, std::move(state), exec);
}

PageRankState pagerank_dynamic(const DynamicGraph& g_in, std::span<const std::uint32_t> out_degree,
                               const PageRankState& previous, const Executor& exec) {
  if (previous.pr.size() != g_in.vertex_count())
    throw Error(Errc::ConfigError, "previous PageRank vector does not match graph size");
  return iterate(g_in, out_degree, previous, exec);
}

}  // namespace dyngraph
