#pragma once

#include <cstdint>
#include <vector>

#include "dyngraph/dynamic_graph.hpp"
#include "dyngraph/executor.hpp"
#include "dyngraph/union_find.hpp"

namespace dyngraph {

struct WccState {
  UnionFind uf;
  std::vector<std::uint8_t> to_union;
  std::vector<std::uint32_t> label_count;
  VertexId freq_label = 0;

  std::vector<VertexId> labels() const { return uf.labels(); }
};

// Hook-based sampling pipeline. Labels are component minima.
WccState wcc_static(const DynamicGraph& g, const Executor& exec = Executor{}, bool check_symmetric = true);

// Inserts the undirected batch into g, unions only the new adjacencies and seals
// the update window. g must track updates and must have been sealed after it was built.
void wcc_incremental(DynamicGraph& g, WccState& state, const EdgeBatch& batch, const Executor& exec = Executor{});

}  // namespace dyngraph
