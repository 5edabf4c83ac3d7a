#pragma once

#include <cstdint>
#include <vector>

#include "dyngraph/dynamic_graph.hpp"
#include "dyngraph/executor.hpp"
#include "dyngraph/frontier.hpp"

namespace dyngraph {

inline constexpr std::uint32_t kInfDistance = 0xFFFFFFFFu;

// Dependence tree: one packed word per vertex, distance in the high half and
// parent in the low half, so a single atomic min prefers the shorter distance
// and then the smaller parent id.
struct SsspTree {
  VertexId src = 0;
  std::vector<std::uint64_t> nodes;

  static constexpr std::uint64_t pack(std::uint32_t distance, VertexId parent) noexcept {
    return (std::uint64_t{distance} << 32) | parent;
  }
  static constexpr std::uint64_t kInvalidNode = (std::uint64_t{kInfDistance} << 32) | kInvalidVertex;

  std::uint32_t distance(VertexId v) const { return static_cast<std::uint32_t>(nodes.at(v) >> 32); }
  VertexId parent(VertexId v) const { return static_cast<VertexId>(nodes.at(v)); }
  bool reachable(VertexId v) const { return distance(v) != kInfDistance; }

  std::vector<std::uint32_t> distances() const;
  std::vector<VertexId> parents() const;
};

SsspTree sssp_static(const DynamicGraph& g, VertexId src, const Executor& exec = Executor{});
// `batch` has already been inserted into g.
void sssp_incremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec = Executor{});

// Decremental pieces, in the order sssp_decremental runs them. `batch` has already been deleted from g.
std::size_t sssp_invalidate(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch);
std::size_t sssp_propagate_invalidation(const DynamicGraph& g, SsspTree& tree);
Frontier<Edge> sssp_decremental_frontier(const DynamicGraph& g, const SsspTree& tree, const Executor& exec = Executor{});
// Relaxes frontier edges until no node improves.
void sssp_relax(const DynamicGraph& g, SsspTree& tree, Frontier<Edge> frontier, const Executor& exec = Executor{});
void sssp_decremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec = Executor{});

// BFS over unweighted graphs. Levels live in the distance half of the tree.
SsspTree bfs_static(const DynamicGraph& g, VertexId src, const Executor& exec = Executor{});
void bfs_incremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec = Executor{});
void bfs_decremental(const DynamicGraph& g, SsspTree& tree, const EdgeBatch& batch, const Executor& exec = Executor{});

}  // namespace dyngraph
