#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dyngraph/dynamic_graph.hpp"
#include "dyngraph/executor.hpp"

namespace dyngraph {

struct TriangleDelta {
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::uint64_t s3 = 0;
  std::int64_t delta = 0;
};

// Sum over edges (u, v) of |adj_g1(u) ∩ adj_g2(v)|, ignoring u and v themselves.
std::uint64_t tc_count(const DynamicGraph& g1, const DynamicGraph& g2, std::span<const Edge> edges,
                       const Executor& exec = Executor{});

std::uint64_t tc_static(const DynamicGraph& g, const Executor& exec = Executor{}, bool check_symmetric = true);

// The batch as a graph of its own, both orientations, unweighted.
DynamicGraph graph_from_batch(const EdgeBatch& batch, std::size_t vertex_n, const GraphOptions& options = {});

// g_after already reflects the batch; g_update is graph_from_batch(batch).
TriangleDelta tc_incremental(const DynamicGraph& g_after, const DynamicGraph& g_update, const EdgeBatch& batch,
                             const Executor& exec = Executor{});
TriangleDelta tc_decremental(const DynamicGraph& g_after, const DynamicGraph& g_update, const EdgeBatch& batch,
                             const Executor& exec = Executor{});

}  // namespace dyngraph
