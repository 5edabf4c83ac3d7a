#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "dyngraph/error.hpp"
#include "dyngraph/types.hpp"

namespace dyngraph {

enum class StoreKind : std::uint8_t { Set, Map };

// Cell geometry shared by set (unweighted) and map (weighted) slabs.
//
// Set: lanes [0, W-2] hold keys, lane W-1 holds the next-slab handle.
// Map: lane 2k holds a key and lane 2k+1 its weight for k < (W-2)/2. Lane W-2
// is never written so that every pair stays aligned to one 64-bit word.
struct SlabLayout {
  unsigned width = 32;
  StoreKind kind = StoreKind::Set;

  unsigned capacity() const noexcept { return kind == StoreKind::Set ? width - 1 : (width - 2) / 2; }
  LaneId next_lane() const noexcept { return width - 1; }

  bool is_key_lane(LaneId lane) const noexcept {
    if (kind == StoreKind::Set) return lane < width - 1;
    return lane % 2 == 0 && lane < width - 2;
  }

  LaneId key_lane(unsigned slot) const noexcept { return kind == StoreKind::Set ? slot : 2 * slot; }

  // Widths must be even and in [4, kMaxGroupWidth] so a map slab holds at least one pair.
  static void validate_width(unsigned width);
};

// Non-owning view of one slab. Storage is W/2 64-bit words; lane l is the low
// (even l) or high (odd l) half of word l/2, so a map pair is a single word.
class SlabRef {
 public:
  SlabRef() = default;
  SlabRef(std::uint64_t* words, unsigned width) noexcept : words_(words), width_(width) {}

  bool valid() const noexcept { return words_ != nullptr; }
  unsigned width() const noexcept { return width_; }

  std::uint32_t load(LaneId lane) const noexcept;
  // Compare-and-set one 32-bit cell. On failure `expected` receives the current value.
  bool cas(LaneId lane, std::uint32_t& expected, std::uint32_t desired) noexcept;
  void store(LaneId lane, std::uint32_t value) noexcept;

  std::uint64_t load_pair(unsigned pair) const noexcept;
  bool cas_pair(unsigned pair, std::uint64_t& expected, std::uint64_t desired) noexcept;

  SlabHandle next() const noexcept { return load(width_ - 1); }

  // All cells EMPTY_KEY, next handle INVALID_ADDRESS.
  void reset() noexcept;

  static constexpr std::uint64_t pack_pair(std::uint32_t key, Weight weight) noexcept {
    return (std::uint64_t{weight} << 32) | key;
  }
  static constexpr std::uint32_t pair_key(std::uint64_t pair) noexcept { return static_cast<std::uint32_t>(pair); }
  static constexpr Weight pair_weight(std::uint64_t pair) noexcept { return static_cast<Weight>(pair >> 32); }

  bool operator==(const SlabRef& other) const noexcept { return words_ == other.words_; }

 private:
  std::uint64_t* words_ = nullptr;
  unsigned width_ = 0;
};

// All head slabs of a graph in one contiguous allocation, addressed through
// the exclusive scan of the per-vertex bucket counts.
class HeadArena {
 public:
  HeadArena() = default;
  HeadArena(std::span<const std::uint32_t> bucket_count, unsigned width);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t total() const noexcept { return total_; }
  unsigned width() const noexcept { return width_; }

  // Per-vertex start index, offsets()[0] == 0.
  std::span<const std::uint64_t> offsets() const noexcept {
    return std::span(offsets_).first(vertex_count());
  }
  std::uint64_t offset(VertexId v) const noexcept { return offsets_[v]; }
  std::uint32_t bucket_count(VertexId v) const noexcept {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }

  SlabRef slab(std::uint64_t index) const noexcept {
    return {storage_.get() + index * (width_ / 2), width_};
  }
  SlabRef head(VertexId v, std::uint32_t bucket) const noexcept { return slab(offsets_[v] + bucket); }

  // Number of backing allocations made for head slabs.
  std::size_t allocation_count() const noexcept { return allocations_; }

 private:
  std::vector<std::uint64_t> offsets_;
  std::unique_ptr<std::uint64_t[]> storage_;
  std::uint64_t total_ = 0;
  unsigned width_ = 0;
  std::size_t allocations_ = 0;
};

// Growth pool for chained slabs. Storage is chunked and never moves, so a
// handle stays valid while other threads allocate.
class SlabPool {
 public:
  explicit SlabPool(unsigned width, std::uint64_t max_slabs = kMaxPoolHandles);

  SlabPool(const SlabPool&) = delete;
  SlabPool& operator=(const SlabPool&) = delete;

  SlabHandle allocate();
  void release(SlabHandle handle);

  SlabRef slab(SlabHandle handle) const noexcept {
    auto* chunk = chunks_[handle >> kChunkBits].get();
    return {chunk + (handle & kChunkMask) * (width_ / 2), width_};
  }

  unsigned width() const noexcept { return width_; }
  std::uint64_t max_slabs() const noexcept { return max_slabs_; }
  // Slabs handed out and not released.
  std::size_t live() const;
  std::size_t created() const;
  std::size_t free_count() const;

 private:
  static constexpr unsigned kChunkBits = 12;
  static constexpr std::uint32_t kChunkMask = (1u << kChunkBits) - 1;

  unsigned width_;
  std::uint64_t max_slabs_;
  mutable std::mutex mutex_;
  std::vector<std::unique_ptr<std::uint64_t[]>> chunks_;
  std::uint64_t created_ = 0;
  std::vector<SlabHandle> free_list_;
};

// Per-list update cursor. The cursor marks the first cell that may be written
// after the last seal; kInvalidLane means the tail slab was full at seal time.
struct ListUpdateState {
  std::uint8_t is_updated = 0;
  SlabHandle handle = kIndexPointer;
  LaneId lane = 0;
};

enum class InsertOutcome { Inserted, AlreadyPresent, Updated };

struct SearchResult {
  bool found = false;
  Weight weight = 0;

  explicit operator bool() const noexcept { return found; }
};

// One bucket's chain of slabs. A lightweight view over arena and pool storage.
//
// With update tracking on, inserts only claim EMPTY cells, which keeps every
// write after the recorded update cursor. Without tracking, tombstones are reused.
class SlabList {
 public:
  SlabList(SlabRef head, SlabPool& pool, SlabLayout layout, ListUpdateState* tracking = nullptr) noexcept
      : head_(head), pool_(&pool), layout_(layout), tracking_(tracking) {}

  InsertOutcome insert(std::uint32_t key, std::optional<Weight> weight = std::nullopt);
  bool erase(std::uint32_t key);
  SearchResult search(std::uint32_t key) const;

  // Moves the update cursor to the next writable cell of the tail and clears the flag.
  void seal();

  SlabRef slab(SlabHandle handle) const noexcept { return handle == kIndexPointer ? head_ : pool_->slab(handle); }
  SlabRef head() const noexcept { return head_; }
  const SlabLayout& layout() const noexcept { return layout_; }
  const ListUpdateState* tracking() const noexcept { return tracking_; }

  SlabHandle tail() const noexcept;
  std::size_t slab_count() const noexcept;
  std::size_t live_count() const noexcept;

  template <class F>
  void for_each_slab(F&& f) const {
    SlabHandle handle = kIndexPointer;
    while (handle != kInvalidAddress) {
      SlabRef s = slab(handle);
      f(handle, s);
      handle = s.next();
    }
  }

 private:
  bool claim(SlabRef s, std::uint32_t key, Weight weight, LaneId& lane);
  bool overwrite(std::uint32_t key, Weight weight);
  void mark_updated() noexcept;

  SlabRef head_;
  SlabPool* pool_;
  SlabLayout layout_;
  ListUpdateState* tracking_;
};

}  // namespace dyngraph
