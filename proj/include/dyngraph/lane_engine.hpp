#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dyngraph/dynamic_graph.hpp"
#include "dyngraph/executor.hpp"
#include "dyngraph/frontier.hpp"
#include "dyngraph/slab_cursor.hpp"

namespace dyngraph {

// Lane-group simulation. A group of W lanes is represented by per-lane
// register arrays; every primitive below reads all W lanes at once, the way
// warp intrinsics require full participation.

using LaneMask = std::uint64_t;

template <class T>
using LaneRegisters = std::array<T, kMaxGroupWidth>;

inline LaneMask group_ballot(std::span<const bool> predicate) {
  LaneMask mask = 0;
  for (std::size_t lane = 0; lane < predicate.size(); ++lane)
    if (predicate[lane]) mask |= LaneMask{1} << lane;
  return mask;
}

// Elects the lowest lane whose flag is set and clears it. Returns -1 when no lane is set.
inline int group_dequeue(std::span<bool> flags) {
  for (std::size_t lane = 0; lane < flags.size(); ++lane) {
    if (flags[lane]) {
      flags[lane] = false;
      return static_cast<int>(lane);
    }
  }
  return -1;
}

template <class T>
T group_broadcast(std::span<const T> values, LaneId src_lane) {
  if (src_lane >= values.size())
    throw Error(Errc::LaneOutOfRange, "broadcast from lane " + std::to_string(src_lane));
  return values[src_lane];
}

// Pairwise tree reduction, always in the same order for a given width.
template <class T, class Op>
T group_reduce(std::span<const T> values, T identity, Op op) {
  if (values.empty()) return identity;
  LaneRegisters<T> scratch{};
  std::copy(values.begin(), values.end(), scratch.begin());
  const std::size_t n = values.size();
  for (std::size_t stride = 1; stride < n; stride *= 2)
    for (std::size_t lane = 0; lane + stride < n; lane += 2 * stride)
      scratch[lane] = op(scratch[lane], scratch[lane + stride]);
  return scratch[0];
}

template <class T>
T group_reduce_sum(std::span<const T> values) {
  return group_reduce(values, T{}, [](T a, T b) { return a + b; });
}

template <class T>
T group_reduce_min(std::span<const T> values) {
  return group_reduce(values, std::numeric_limits<T>::max(), [](T a, T b) { return std::min(a, b); });
}

// Appends the flagged lanes' values in lane order. The size is advanced once
// per group; each lane writes at base + (number of flagged lanes below it).
template <class T>
void group_enqueue_frontier(Frontier<T>& frontier, std::span<const T> values, std::span<const bool> to_enqueue) {
  const LaneMask mask = group_ballot(to_enqueue);
  if (mask == 0) return;
  const std::size_t base = frontier.claim(static_cast<std::size_t>(std::popcount(mask)));
  for (std::size_t lane = 0; lane < to_enqueue.size(); ++lane) {
    if (!to_enqueue[lane]) continue;
    const LaneMask below = mask & ((LaneMask{1} << lane) - 1);
    frontier[base + static_cast<std::size_t>(std::popcount(below))] = values[lane];
  }
}

// Runs `body(first, last)` for every W-sized stripe of [0, n).
template <class Body>
void for_each_stripe(const Executor& exec, std::size_t n, unsigned width, Body&& body) {
  const std::size_t stripes = (n + width - 1) / width;
  exec.parallel_for(stripes, [&](std::size_t stripe) {
    const std::size_t first = stripe * width;
    body(first, std::min(n, first + width));
  });
}

struct AdjacentCell {
  VertexId src;
  VertexId dst;
  Weight weight;
  LaneId lane;
};

// Walks [it, last) one slab at a time; every lane reads its cell and valid
// vertices are handed to `visit`. first_lane_id() masks lanes of the first
// updated slab that predate the update window.
template <class Visitor>
void visit_slabs(SlabCursor it, const SlabCursor& last, VertexId src, unsigned width, Visitor& visit) {
  for (; it != last; ++it) {
    for (LaneId lane = it.first_lane_id(); lane < width; ++lane)
      if (it.is_valid_vertex(lane)) visit(AdjacentCell{src, it.get(lane), it.weight(lane), lane});
  }
}

namespace detail {

template <class MakeRange, class Visitor>
void scheme1_impl(const DynamicGraph& g, const Executor& exec, std::span<const VertexId> vertices,
                  MakeRange make_range, Visitor& visit) {
  const unsigned width = g.width();
  for (VertexId v : vertices)
    if (v >= g.vertex_count()) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
  for_each_stripe(exec, vertices.size(), width, [&](std::size_t first, std::size_t last) {
    LaneRegisters<bool> to_process{};
    LaneRegisters<VertexId> lane_vertex{};
    for (std::size_t i = first; i < last; ++i) {
      to_process[i - first] = true;
      lane_vertex[i - first] = vertices[i];
    }
    const auto flags = std::span(to_process).first(width);
    for (int lane; (lane = group_dequeue(flags)) >= 0;) {
      const VertexId src = group_broadcast<VertexId>(std::span(lane_vertex).first(width), static_cast<LaneId>(lane));
      auto [it, stop] = make_range(src);
      visit_slabs(it, stop, src, width, visit);
    }
  });
}

}  // namespace detail

// IterationScheme1: W vertices per group, elected one at a time from the
// group's work queue; each elected vertex is walked with a SlabIterator.
template <class Visitor>
void scheme1_for_each(const DynamicGraph& g, const Executor& exec, std::span<const VertexId> vertices,
                      Visitor&& visit) {
  detail::scheme1_impl(
      g, exec, vertices, [&](VertexId v) { return std::pair(begin(g, v), end(g, v)); }, visit);
}

// Same as scheme1_for_each but visits only cells written since the last seal.
template <class Visitor>
void scheme1_update_for_each(const DynamicGraph& g, const Executor& exec, std::span<const VertexId> vertices,
                             Visitor&& visit) {
  if (!g.tracking()) throw Error(Errc::TrackingDisabled, "update iteration needs update tracking");
  detail::scheme1_impl(
      g, exec, vertices, [&](VertexId v) { return std::pair(update_begin(g, v), update_end(g, v)); }, visit);
}

struct BucketPairs {
  std::vector<VertexId> bucket_vertex;
  std::vector<std::uint32_t> bucket_index;
};

// One <vertex, bucket> pair per slab list of every listed vertex.
inline BucketPairs expand_bucket_pairs(const DynamicGraph& g, std::span<const VertexId> vertices) {
  BucketPairs pairs;
  for (VertexId v : vertices) {
    if (v >= g.vertex_count()) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
    for (std::uint32_t b = 0; b < g.bucket_count(v); ++b) {
      pairs.bucket_vertex.push_back(v);
      pairs.bucket_index.push_back(b);
    }
  }
  return pairs;
}

inline BucketPairs all_bucket_pairs(const DynamicGraph& g) {
  BucketPairs pairs;
  pairs.bucket_vertex.reserve(g.arena().total());
  pairs.bucket_index.reserve(g.arena().total());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::uint32_t b = 0; b < g.bucket_count(v); ++b) {
      pairs.bucket_vertex.push_back(v);
      pairs.bucket_index.push_back(b);
    }
  }
  return pairs;
}

// IterationScheme2: one slab list per group step, grid-stride over <v, i> pairs,
// walked with BucketIterators. No work queue.
template <class Visitor>
void scheme2_for_each(const DynamicGraph& g, const Executor& exec, std::span<const VertexId> bucket_vertex,
                      std::span<const std::uint32_t> bucket_index, Visitor&& visit) {
  if (bucket_vertex.size() != bucket_index.size())
    throw Error(Errc::ConfigError, "bucket_vertex and bucket_index differ in length");
  for (std::size_t i = 0; i < bucket_vertex.size(); ++i) {
    if (bucket_vertex[i] >= g.vertex_count())
      throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(bucket_vertex[i]));
    if (bucket_index[i] >= g.bucket_count(bucket_vertex[i]))
      throw Error(Errc::BucketOutOfRange, "bucket " + std::to_string(bucket_index[i]) + " of vertex " +
                                              std::to_string(bucket_vertex[i]));
  }
  const unsigned width = g.width();
  exec.parallel_for(bucket_vertex.size(), [&](std::size_t i) {
    const VertexId src = bucket_vertex[i];
    visit_slabs(begin_at(g, src, bucket_index[i]), end_at(g, src, bucket_index[i]), src, width, visit);
  });
}

}  // namespace dyngraph
