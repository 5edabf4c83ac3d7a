#include "dyngraph/union_find.hpp"

#include <atomic>
#include <numeric>
#include <string>

#include "dyngraph/error.hpp"

namespace dyngraph {

namespace {

std::atomic_ref<VertexId> cell(std::vector<VertexId>& parents, VertexId v) { return std::atomic_ref(parents[v]); }

}  // namespace

UnionFind::UnionFind(std::size_t n) : parents_(n) { std::iota(parents_.begin(), parents_.end(), VertexId{0}); }

void UnionFind::check(VertexId v) const {
  if (v >= parents_.size()) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
}

VertexId UnionFind::find(VertexId v) const {
  check(v);
  VertexId hops = 0;
  for (VertexId p; (p = cell(parents_, v).load(std::memory_order_acquire)) != v; v = p) {
    if (++hops > parents_.size()) throw Error(Errc::CycleDetected, "union-find parent cycle");
  }
  return v;
}

VertexId UnionFind::parent(VertexId v) const {
  check(v);
  return cell(parents_, v).load(std::memory_order_acquire);
}

void UnionFind::hook_min(VertexId v, VertexId label) {
  check(v);
  auto slot = cell(parents_, v);
  VertexId current = slot.load(std::memory_order_relaxed);
  while (label < current && !slot.compare_exchange_weak(current, label, std::memory_order_acq_rel)) {
  }
}

void UnionFind::union_async(VertexId u, VertexId v) {
  for (;;) {
    VertexId ru = find(u);
    VertexId rv = find(v);
    if (ru == rv) return;
    if (ru < rv) std::swap(ru, rv);
    // ru is the larger root; it only stops being a root if another union hooked it first.
    VertexId expected = ru;
    if (cell(parents_, ru).compare_exchange_strong(expected, rv, std::memory_order_acq_rel)) return;
  }
}

void UnionFind::compress_all(const Executor& exec) {
  exec.parallel_for(parents_.size(), [&](std::size_t v) {
    const VertexId root = find(static_cast<VertexId>(v));
    cell(parents_, static_cast<VertexId>(v)).store(root, std::memory_order_release);
  });
}

}  // namespace dyngraph
