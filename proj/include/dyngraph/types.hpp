#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dyngraph {

using VertexId = std::uint32_t;
using Weight = std::uint32_t;
using SlabHandle = std::uint32_t;
using LaneId = std::uint32_t;

// Cell sentinels. Real vertex ids are strictly below kTombstoneKey.
inline constexpr std::uint32_t kEmptyKey = 0xFFFFFFFEu;
inline constexpr std::uint32_t kTombstoneKey = 0xFFFFFFFDu;
inline constexpr VertexId kInvalidVertex = 0xFFFFFFFFu;

// Handle sentinels. A head slab lives in the arena and is never addressed by a pool handle.
inline constexpr SlabHandle kIndexPointer = 0xFFFFFFFEu;
inline constexpr SlabHandle kInvalidAddress = 0xFFFFFFFFu;
inline constexpr std::uint64_t kMaxPoolHandles = 0xFFFFFFFDull;

inline constexpr LaneId kInvalidLane = 0xFFFFFFFFu;

inline constexpr unsigned kMaxGroupWidth = 64;

inline constexpr bool is_sentinel_key(std::uint32_t key) noexcept { return key >= kTombstoneKey; }

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  Weight weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A batch of edge updates held as parallel arrays. Undirected batches are
// expanded into both orientations by materialized() before they touch a graph.
struct EdgeBatch {
  std::vector<VertexId> src;
  std::vector<VertexId> dst;
  std::vector<Weight> weights;  // empty for unweighted batches
  bool directed = true;

  std::size_t size() const noexcept { return src.size(); }
  bool empty() const noexcept { return src.empty(); }
  bool weighted() const noexcept { return !weights.empty(); }

  Edge edge(std::size_t i) const {
    return {src[i], dst[i], weights.empty() ? Weight{1} : weights[i]};
  }

  void add(VertexId u, VertexId v) {
    src.push_back(u);
    dst.push_back(v);
  }

  void add(VertexId u, VertexId v, Weight w) {
    src.push_back(u);
    dst.push_back(v);
    weights.push_back(w);
  }

  void add(const Edge& e, bool with_weight) {
    if (with_weight)
      add(e.src, e.dst, e.weight);
    else
      add(e.src, e.dst);
  }

  // Directed batch; undirected batches gain the reverse orientation of every edge.
  EdgeBatch materialized() const;

  std::vector<Edge> edges() const;

  static EdgeBatch from_edges(const std::vector<Edge>& edges, bool with_weights, bool directed = true);
};

}  // namespace dyngraph
