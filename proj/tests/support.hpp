#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "dyngraph/dynamic_graph.hpp"
#include "oracles/oracles.hpp"

namespace testing {

using dyngraph::Edge;
using dyngraph::VertexId;

// G(n, p) without self-loops. Undirected graphs list each edge once with u < v.
inline std::vector<Edge> gnp(std::size_t n, double p, std::uint64_t seed, bool directed, std::uint32_t max_weight = 1) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<std::uint32_t> weight(1, max_weight);
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = directed ? 0 : u + 1; v < n; ++v)
      if (u != v && coin(rng)) edges.push_back({u, v, weight(rng)});
  return edges;
}

// `count` edges absent from `existing`, drawn uniformly.
inline std::vector<Edge> fresh_edges(std::size_t n, std::size_t count, const std::set<std::pair<VertexId, VertexId>>& existing,
                                     std::mt19937_64& rng, bool directed, std::uint32_t max_weight = 1) {
  std::uniform_int_distribution<VertexId> vertex(0, static_cast<VertexId>(n - 1));
  std::uniform_int_distribution<std::uint32_t> weight(1, max_weight);
  std::set<std::pair<VertexId, VertexId>> taken = existing;
  std::vector<Edge> out;
  while (out.size() < count) {
    VertexId u = vertex(rng), v = vertex(rng);
    if (u == v) continue;
    if (!directed && u > v) std::swap(u, v);
    if (!taken.insert({u, v}).second) continue;
    if (!directed) taken.insert({v, u});
    out.push_back({u, v, weight(rng)});
  }
  return out;
}

inline oracle::PlainGraph to_plain(const dyngraph::Adjacency& adjacency) {
  oracle::PlainGraph g(adjacency.size());
  for (std::size_t u = 0; u < adjacency.size(); ++u)
    for (const auto& [v, w] : adjacency[u]) g.adj[u][v] = w;
  return g;
}

inline oracle::PlainGraph to_plain(const dyngraph::DynamicGraph& g) { return to_plain(g.snapshot_adjacency()); }

inline dyngraph::EdgeBatch batch_of(const std::vector<Edge>& edges, bool weighted, bool directed = true) {
  return dyngraph::EdgeBatch::from_edges(edges, weighted, directed);
}

inline std::vector<std::uint32_t> degree_hints(std::size_t n, const std::vector<Edge>& edges, bool undirected) {
  std::vector<std::uint32_t> hints(n, 0);
  for (const Edge& e : edges) {
    ++hints[e.src];
    if (undirected) ++hints[e.dst];
  }
  return hints;
}

}  // namespace testing
