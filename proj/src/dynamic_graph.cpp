#include "dyngraph/dynamic_graph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <string>

namespace dyngraph {

HashParams HashParams::from_seed(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  HashParams params;
  params.a = 1 + rng() % (kPrime - 1);
  params.b = rng() % kPrime;
  return params;
}

std::uint32_t bucket_count_for(std::uint32_t degree_hint, double load_factor, unsigned slab_capacity) {
  const double ratio = static_cast<double>(degree_hint) / (load_factor * slab_capacity);
  // 186 / (0.6 * 31) lands a hair above 10 in binary; snap such ratios to the integer.
  const double nearest = std::round(ratio);
  const double buckets = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::ceil(ratio);
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(buckets));
}

DynamicGraph::DynamicGraph(std::size_t vertex_n, std::span<const std::uint32_t> degree_hints,
                           const GraphOptions& options)
    : vertex_n_(vertex_n),
      layout_{options.width, options.weighted ? StoreKind::Map : StoreKind::Set},
      load_factor_(options.load_factor),
      hashing_(options.hashing),
      tracking_(options.update_tracking),
      hash_(options.hash_seed == 0 ? HashParams{} : HashParams::from_seed(options.hash_seed)) {
  SlabLayout::validate_width(options.width);
  if (vertex_n == 0) throw Error(Errc::ConfigError, "graph needs at least one vertex");
  if (vertex_n >= kTombstoneKey) throw Error(Errc::CapacityOverflow, "vertex count exceeds the key space");
  if (!(load_factor_ > 0.0 && load_factor_ <= 1.0))
    throw Error(Errc::BadLoadFactor, "load factor must be in (0, 1], got " + std::to_string(load_factor_));
  if (!degree_hints.empty() && degree_hints.size() != vertex_n)
    throw Error(Errc::ConfigError, "degree hint count does not match vertex count");

  bucket_count_.assign(vertex_n, 1);
  if (hashing_ && !degree_hints.empty()) {
    for (std::size_t v = 0; v < vertex_n; ++v)
      bucket_count_[v] = bucket_count_for(degree_hints[v], load_factor_, layout_.capacity());
  }

  arena_ = HeadArena(bucket_count_, layout_.width);
  pool_ = std::make_unique<SlabPool>(layout_.width, options.max_pool_slabs);
  if (tracking_) {
    update_state_ = std::make_unique<ListUpdateState[]>(arena_.total());
    vertex_updated_ = std::make_unique<std::uint8_t[]>(vertex_n);
  }
  degree_ = std::make_unique<std::uint32_t[]>(vertex_n);
}

void DynamicGraph::check_vertex(VertexId v) const {
  if (v >= vertex_n_)
    throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v) + " >= " + std::to_string(vertex_n_));
}

const ListUpdateState& DynamicGraph::update_state(VertexId v, std::uint32_t bucket) const {
  if (!tracking_) throw Error(Errc::TrackingDisabled, "graph was built without update tracking");
  check_vertex(v);
  if (bucket >= bucket_count_[v]) throw Error(Errc::BucketOutOfRange, "bucket " + std::to_string(bucket));
  return update_state_[arena_.offset(v) + bucket];
}

bool DynamicGraph::vertex_updated(VertexId v) const {
  if (!tracking_) throw Error(Errc::TrackingDisabled, "graph was built without update tracking");
  check_vertex(v);
  return std::atomic_ref<std::uint8_t>(vertex_updated_[v]).load(std::memory_order_acquire) != 0;
}

InsertOutcome DynamicGraph::insert_edge(VertexId u, VertexId v, Weight weight) {
  check_vertex(u);
  check_vertex(v);
  auto outcome = list(u, bucket_of(u, v)).insert(v, weighted() ? std::optional<Weight>(weight) : std::nullopt);
  if (outcome == InsertOutcome::Inserted) {
    std::atomic_ref<std::uint32_t>(degree_[u]).fetch_add(1, std::memory_order_relaxed);
    if (tracking_) std::atomic_ref<std::uint8_t>(vertex_updated_[u]).store(1, std::memory_order_release);
  }
  return outcome;
}

bool DynamicGraph::delete_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (!list(u, bucket_of(u, v)).erase(v)) return false;
  std::atomic_ref<std::uint32_t>(degree_[u]).fetch_sub(1, std::memory_order_relaxed);
  return true;
}

SearchResult DynamicGraph::search_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  return list(u, bucket_of(u, v)).search(v);
}

std::vector<Edge> DynamicGraph::prepare(const EdgeBatch& input) const {
  const EdgeBatch batch = input.materialized();
  std::vector<Edge> edges;
  edges.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Edge e = batch.edge(i);
    check_vertex(e.src);
    check_vertex(e.dst);
    edges.push_back(e);
  }
  // Last occurrence of an orientation wins.
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  std::vector<Edge> unique;
  unique.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i + 1 < edges.size() && edges[i + 1].src == edges[i].src && edges[i + 1].dst == edges[i].dst) continue;
    unique.push_back(edges[i]);
  }
  return unique;
}

std::size_t DynamicGraph::insert_edges(const EdgeBatch& batch, const Executor& exec) {
  const std::vector<Edge> edges = prepare(batch);
  const unsigned stride = width();
  const std::size_t stripes = (edges.size() + stride - 1) / stride;
  std::atomic<std::size_t> inserted{0};
  exec.parallel_for(stripes, [&](std::size_t stripe) {
    std::size_t local = 0;
    const std::size_t last = std::min(edges.size(), (stripe + 1) * stride);
    for (std::size_t i = stripe * stride; i < last; ++i)
      if (insert_edge(edges[i].src, edges[i].dst, edges[i].weight) == InsertOutcome::Inserted) ++local;
    inserted.fetch_add(local, std::memory_order_relaxed);
  });
  return inserted.load();
}

std::size_t DynamicGraph::delete_edges(const EdgeBatch& batch, const Executor& exec) {
  const std::vector<Edge> edges = prepare(batch);
  const unsigned stride = width();
  const std::size_t stripes = (edges.size() + stride - 1) / stride;
  std::atomic<std::size_t> deleted{0};
  exec.parallel_for(stripes, [&](std::size_t stripe) {
    std::size_t local = 0;
    const std::size_t last = std::min(edges.size(), (stripe + 1) * stride);
    for (std::size_t i = stripe * stride; i < last; ++i)
      if (delete_edge(edges[i].src, edges[i].dst)) ++local;
    deleted.fetch_add(local, std::memory_order_relaxed);
  });
  return deleted.load();
}

void DynamicGraph::seal_updates() {
  if (!tracking_) return;
  for (VertexId v = 0; v < vertex_n_; ++v) {
    std::atomic_ref<std::uint8_t> flag(vertex_updated_[v]);
    if (flag.load(std::memory_order_acquire) == 0) continue;
    for (std::uint32_t b = 0; b < bucket_count_[v]; ++b) list(v, b).seal();
    flag.store(0, std::memory_order_release);
  }
}

std::uint32_t DynamicGraph::degree(VertexId v) const {
  check_vertex(v);
  return std::atomic_ref<std::uint32_t>(degree_[v]).load(std::memory_order_relaxed);
}

std::uint64_t DynamicGraph::edge_count() const {
  std::uint64_t total = 0;
  for (VertexId v = 0; v < vertex_n_; ++v) total += degree(v);
  return total;
}

Adjacency DynamicGraph::snapshot_adjacency() const {
  Adjacency adjacency(vertex_n_);
  for (VertexId v = 0; v < vertex_n_; ++v) {
    for (std::uint32_t b = 0; b < bucket_count_[v]; ++b) {
      list(v, b).for_each_slab([&](SlabHandle, SlabRef s) {
        for (unsigned slot = 0; slot < layout_.capacity(); ++slot) {
          const LaneId lane = layout_.key_lane(slot);
          if (layout_.kind == StoreKind::Map) {
            const auto pair = s.load_pair(lane / 2);
            if (!is_sentinel_key(SlabRef::pair_key(pair)))
              adjacency[v][SlabRef::pair_key(pair)] = SlabRef::pair_weight(pair);
          } else if (auto key = s.load(lane); !is_sentinel_key(key)) {
            adjacency[v][key] = 1;
          }
        }
      });
    }
  }
  return adjacency;
}

std::vector<Edge> DynamicGraph::edges() const {
  std::vector<Edge> out;
  const Adjacency adjacency = snapshot_adjacency();
  for (VertexId u = 0; u < vertex_n_; ++u)
    for (const auto& [v, w] : adjacency[u]) out.push_back({u, v, w});
  return out;
}

bool DynamicGraph::is_symmetric() const {
  const Adjacency adjacency = snapshot_adjacency();
  for (VertexId u = 0; u < vertex_n_; ++u)
    for (const auto& [v, w] : adjacency[u])
      if (!adjacency[v].contains(u)) return false;
  return true;
}

}  // namespace dyngraph
