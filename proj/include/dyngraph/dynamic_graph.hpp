#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "dyngraph/executor.hpp"
#include "dyngraph/slab_store.hpp"
#include "dyngraph/types.hpp"

namespace dyngraph {

// Plain adjacency export: one ordered map per vertex, neighbor -> weight.
using Adjacency = std::vector<std::map<VertexId, Weight>>;

// Universal hashing ((a * key + b) mod p) mod buckets.
struct HashParams {
  static constexpr std::uint64_t kPrime = 4294967291ull;

  std::uint64_t a = 2654435761ull;
  std::uint64_t b = 97;

  static HashParams from_seed(std::uint64_t seed);
};

struct GraphOptions {
  unsigned width = 32;
  double load_factor = 0.6;
  bool weighted = false;
  bool hashing = true;
  bool update_tracking = false;
  std::uint64_t hash_seed = 0;  // 0 keeps the default hash constants
  std::uint64_t max_pool_slabs = kMaxPoolHandles;
};

// max(1, ceil(hint / (lf * capacity)))
std::uint32_t bucket_count_for(std::uint32_t degree_hint, double load_factor, unsigned slab_capacity);

class DynamicGraph {
 public:
  // Degree hints size the per-vertex bucket counts. An empty span means one bucket per vertex.
  DynamicGraph(std::size_t vertex_n, std::span<const std::uint32_t> degree_hints, const GraphOptions& options = {});
  explicit DynamicGraph(std::size_t vertex_n, const GraphOptions& options = {})
      : DynamicGraph(vertex_n, std::span<const std::uint32_t>{}, options) {}

  DynamicGraph(DynamicGraph&&) noexcept = default;
  DynamicGraph& operator=(DynamicGraph&&) noexcept = default;

  std::size_t vertex_count() const noexcept { return vertex_n_; }
  unsigned width() const noexcept { return layout_.width; }
  bool weighted() const noexcept { return layout_.kind == StoreKind::Map; }
  bool hashing() const noexcept { return hashing_; }
  bool tracking() const noexcept { return tracking_; }
  double load_factor() const noexcept { return load_factor_; }
  const SlabLayout& layout() const noexcept { return layout_; }
  const HashParams& hash_params() const noexcept { return hash_; }

  std::uint32_t bucket_count(VertexId v) const noexcept { return bucket_count_[v]; }
  std::span<const std::uint32_t> bucket_counts() const noexcept { return bucket_count_; }
  const HeadArena& arena() const noexcept { return arena_; }
  const SlabPool& pool() const noexcept { return *pool_; }

  std::uint32_t bucket_of(VertexId v, std::uint32_t key) const noexcept {
    if (!hashing_ || bucket_count_[v] == 1) return 0;
    return static_cast<std::uint32_t>(((hash_.a * key + hash_.b) % HashParams::kPrime) % bucket_count_[v]);
  }

  SlabList list(VertexId v, std::uint32_t bucket) const noexcept {
    const auto index = arena_.offset(v) + bucket;
    return SlabList(arena_.slab(index), *pool_, layout_, tracking_ ? &update_state_[index] : nullptr);
  }

  SlabRef slab(VertexId v, std::uint32_t bucket, SlabHandle handle) const noexcept {
    return handle == kIndexPointer ? arena_.head(v, bucket) : pool_->slab(handle);
  }

  // Requires update tracking.
  const ListUpdateState& update_state(VertexId v, std::uint32_t bucket) const;
  bool vertex_updated(VertexId v) const;

  InsertOutcome insert_edge(VertexId u, VertexId v, Weight weight = 1);
  bool delete_edge(VertexId u, VertexId v);
  SearchResult search_edge(VertexId u, VertexId v) const;

  // Batches are deduplicated per orientation (last weight wins) before they are applied.
  std::size_t insert_edges(const EdgeBatch& batch, const Executor& exec = Executor{});
  std::size_t delete_edges(const EdgeBatch& batch, const Executor& exec = Executor{});

  // UpdateSlabPointers: closes the current update window on every updated list.
  void seal_updates();

  std::uint32_t degree(VertexId v) const;
  std::uint64_t edge_count() const;
  Adjacency snapshot_adjacency() const;
  std::vector<Edge> edges() const;
  bool is_symmetric() const;

 private:
  void check_vertex(VertexId v) const;
  std::vector<Edge> prepare(const EdgeBatch& batch) const;

  std::size_t vertex_n_;
  SlabLayout layout_;
  double load_factor_;
  bool hashing_;
  bool tracking_;
  HashParams hash_;
  std::vector<std::uint32_t> bucket_count_;
  HeadArena arena_;
  std::unique_ptr<SlabPool> pool_;
  std::unique_ptr<ListUpdateState[]> update_state_;
  std::unique_ptr<std::uint8_t[]> vertex_updated_;
  std::unique_ptr<std::uint32_t[]> degree_;
};

}  // namespace dyngraph
