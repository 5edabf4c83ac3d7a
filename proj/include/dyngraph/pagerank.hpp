#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dyngraph/dynamic_graph.hpp"
#include "dyngraph/executor.hpp"

namespace dyngraph {

struct PageRankOptions {
  double damping = 0.85;
  double eps = 1e-5;
  unsigned max_iter = 100;
};

struct PageRankState {
  std::vector<double> pr;
  std::vector<double> contribution;
  PageRankOptions options;
  unsigned iterations = 0;
  double last_delta = 0.0;
};

// out[u] = number of in-edge lists that contain u.
std::vector<std::uint32_t> out_degrees_from_in_graph(const DynamicGraph& g_in, const Executor& exec = Executor{});

// Power iteration over a graph that stores incoming edges, starting from the uniform vector.
PageRankState pagerank(const DynamicGraph& g_in, std::span<const std::uint32_t> out_degree,
                       const PageRankOptions& options = {}, const Executor& exec = Executor{});

// Reruns the same iteration warm-started from `previous.pr`; the batch must already be applied.
PageRankState pagerank_dynamic(const DynamicGraph& g_in, std::span<const std::uint32_t> out_degree,
                               const PageRankState& previous, const Executor& exec = Executor{});

}  // namespace dyngraph
