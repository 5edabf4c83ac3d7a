#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dyngraph/executor.hpp"
#include "dyngraph/types.hpp"

namespace dyngraph {

// Union-find over numeric labels. Roots are hooked by atomic min, so a parent
// is never larger than its child and a root is the minimum of its tree.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0);

  std::size_t size() const noexcept { return parents_.size(); }

  VertexId find(VertexId v) const;
  // Union-Async: retries hooking the larger root under the smaller until both share a root.
  void union_async(VertexId u, VertexId v);
  // Requires quiescence.
  void compress_all(const Executor& exec = Executor{});

  VertexId parent(VertexId v) const;
  // Lowers parents[v] to `label` if smaller; used by the hooking phase.
  void hook_min(VertexId v, VertexId label);

  std::span<const VertexId> parents() const noexcept { return parents_; }
  std::vector<VertexId> labels() const { return parents_; }

 private:
  void check(VertexId v) const;

  mutable std::vector<VertexId> parents_;
};

}  // namespace dyngraph
