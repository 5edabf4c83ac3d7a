#include "oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <queue>
#include <unordered_map>
#include <utility>

namespace oracle {

PlainGraph PlainGraph::reversed() const {
  PlainGraph r(size());
  for (std::uint32_t u = 0; u < size(); ++u)
    for (const auto& [v, w] : adj[u]) r.adj[v][u] = w;
  return r;
}

std::vector<std::uint32_t> dijkstra(const PlainGraph& g, std::uint32_t src) {
  std::vector<std::uint64_t> dist(g.size(), UINT64_MAX);
  using Item = std::pair<std::uint64_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0;
  heap.push({0, src});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (const auto& [v, w] : g.adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.push({dist[v], v});
      }
    }
  }
  std::vector<std::uint32_t> out(g.size());
  for (std::size_t v = 0; v < g.size(); ++v)
    out[v] = dist[v] >= kUnreached ? kUnreached : static_cast<std::uint32_t>(dist[v]);
  return out;
}

std::vector<std::uint32_t> bfs(const PlainGraph& g, std::uint32_t src) {
  std::vector<std::uint32_t> level(g.size(), kUnreached);
  std::deque<std::uint32_t> queue{src};
  level[src] = 0;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (const auto& [v, w] : g.adj[u]) {
      if (level[v] != kUnreached) continue;
      level[v] = level[u] + 1;
      queue.push_back(v);
    }
  }
  return level;
}

std::vector<double> pagerank(const PlainGraph& g, double damping, double eps, unsigned max_iter,
                             unsigned* iterations) {
  const std::size_t n = g.size();
  std::vector<double> pr(n, 1.0 / n), next(n);
  unsigned it = 0;
  while (it < max_iter) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      if (g.adj[u].empty()) dangling += pr[u];
    std::fill(next.begin(), next.end(), (1.0 - damping) / n + damping * dangling / n);
    for (std::size_t u = 0; u < n; ++u)
      for (const auto& [v, w] : g.adj[u]) next[v] += damping * pr[u] / g.adj[u].size();
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) delta += std::abs(next[v] - pr[v]);
    pr.swap(next);
    ++it;
    if (delta <= eps) break;
  }
  if (iterations) *iterations = it;
  return pr;
}

std::uint64_t triangles(const PlainGraph& g) {
  // Count each triangle once as u < v < w.
  std::vector<std::vector<std::uint32_t>> higher(g.size());
  for (std::uint32_t u = 0; u < g.size(); ++u)
    for (const auto& [v, w] : g.adj[u])
      if (v > u) higher[u].push_back(v);
  std::uint64_t count = 0;
  for (std::uint32_t u = 0; u < g.size(); ++u) {
    for (std::uint32_t v : higher[u]) {
      std::vector<std::uint32_t> common;
      std::set_intersection(higher[u].begin(), higher[u].end(), higher[v].begin(), higher[v].end(),
                            std::back_inserter(common));
      count += common.size();
    }
  }
  return count;
}

std::vector<std::uint32_t> wcc(const PlainGraph& g) {
  // Weak connectivity ignores direction.
  std::vector<std::vector<std::uint32_t>> both(g.size());
  for (std::uint32_t u = 0; u < g.size(); ++u) {
    for (const auto& [v, w] : g.adj[u]) {
      both[u].push_back(v);
      both[v].push_back(u);
    }
  }
  std::vector<std::uint32_t> comp(g.size(), kUnreached);
  std::uint32_t next_id = 0;
  for (std::uint32_t s = 0; s < g.size(); ++s) {
    if (comp[s] != kUnreached) continue;
    std::vector<std::uint32_t> stack{s};
    comp[s] = next_id;
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t v : both[u]) {
        if (comp[v] != kUnreached) continue;
        comp[v] = next_id;
        stack.push_back(v);
      }
    }
    ++next_id;
  }
  return comp;
}

std::vector<std::uint32_t> canonical_partition(const std::vector<std::uint32_t>& labels) {
  std::unordered_map<std::uint32_t, std::uint32_t> first;
  std::vector<std::uint32_t> out(labels.size());
  for (std::uint32_t v = 0; v < labels.size(); ++v) {
    auto [it, fresh] = first.try_emplace(labels[v], v);
    out[v] = it->second;
  }
  return out;
}

}  // namespace oracle
