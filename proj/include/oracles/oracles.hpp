#pragma once

// Brute-force references. Nothing here may include the slab store or lane engine.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

inline constexpr std::uint32_t kUnreached = 0xFFFFFFFFu;

struct PlainGraph {
  std::vector<std::map<std::uint32_t, std::uint32_t>> adj;  // neighbor -> weight

  explicit PlainGraph(std::size_t n = 0) : adj(n) {}

  std::size_t size() const { return adj.size(); }
  void add(std::uint32_t u, std::uint32_t v, std::uint32_t w = 1) { adj[u][v] = w; }
  void add_undirected(std::uint32_t u, std::uint32_t v, std::uint32_t w = 1) {
    adj[u][v] = w;
    adj[v][u] = w;
  }
  bool erase(std::uint32_t u, std::uint32_t v) { return adj[u].erase(v) > 0; }
  PlainGraph reversed() const;
};

std::vector<std::uint32_t> dijkstra(const PlainGraph& g, std::uint32_t src);
std::vector<std::uint32_t> bfs(const PlainGraph& g, std::uint32_t src);
// Dense power iteration with the dangling-mass term and L1 stopping rule.
// `g` holds out-edges here.
std::vector<double> pagerank(const PlainGraph& g, double damping, double eps, unsigned max_iter,
                             unsigned* iterations = nullptr);
// Undirected triangles; self-loops ignored.
std::uint64_t triangles(const PlainGraph& g);
// Component id per vertex, numbered in order of first vertex.
std::vector<std::uint32_t> wcc(const PlainGraph& g);
// Canonical partition: each vertex mapped to the smallest vertex of its class.
std::vector<std::uint32_t> canonical_partition(const std::vector<std::uint32_t>& labels);

}  // namespace oracle
