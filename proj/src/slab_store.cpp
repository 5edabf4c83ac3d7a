#include "dyngraph/slab_store.hpp"

#include <atomic>
#include <algorithm>
#include <new>
#include <string>

namespace dyngraph {

namespace {

constexpr std::uint64_t kEmptyPair = SlabRef::pack_pair(kEmptyKey, kEmptyKey);
constexpr std::uint64_t kTombstonePair = SlabRef::pack_pair(kTombstoneKey, kTombstoneKey);
constexpr std::uint64_t kLastWordInit = SlabRef::pack_pair(kEmptyKey, kInvalidAddress);

std::atomic_ref<std::uint64_t> word_ref(std::uint64_t* words, LaneId lane) noexcept {
  return std::atomic_ref<std::uint64_t>(words[lane / 2]);
}

constexpr unsigned half_shift(LaneId lane) noexcept { return (lane & 1u) * 32u; }

}  // namespace

void SlabLayout::validate_width(unsigned width) {
  if (width < 4 || width > kMaxGroupWidth || width % 2 != 0)
    throw Error(Errc::BadWidth, "slab width must be even and in [4, 64], got " + std::to_string(width));
}

std::uint32_t SlabRef::load(LaneId lane) const noexcept {
  auto word = word_ref(words_, lane).load(std::memory_order_acquire);
  return static_cast<std::uint32_t>(word >> half_shift(lane));
}

bool SlabRef::cas(LaneId lane, std::uint32_t& expected, std::uint32_t desired) noexcept {
  auto ref = word_ref(words_, lane);
  const unsigned shift = half_shift(lane);
  const std::uint64_t mask = std::uint64_t{0xFFFFFFFFu} << shift;
  std::uint64_t old_word = ref.load(std::memory_order_acquire);
  for (;;) {
    auto current = static_cast<std::uint32_t>(old_word >> shift);
    if (current != expected) {
      expected = current;
      return false;
    }
    std::uint64_t new_word = (old_word & ~mask) | (std::uint64_t{desired} << shift);
    if (ref.compare_exchange_weak(old_word, new_word, std::memory_order_acq_rel, std::memory_order_acquire))
      return true;
  }
}

void SlabRef::store(LaneId lane, std::uint32_t value) noexcept {
  std::uint32_t expected = load(lane);
  while (!cas(lane, expected, value)) {
  }
}

std::uint64_t SlabRef::load_pair(unsigned pair) const noexcept {
  return std::atomic_ref<std::uint64_t>(words_[pair]).load(std::memory_order_acquire);
}

bool SlabRef::cas_pair(unsigned pair, std::uint64_t& expected, std::uint64_t desired) noexcept {
  return std::atomic_ref<std::uint64_t>(words_[pair])
      .compare_exchange_strong(expected, desired, std::memory_order_acq_rel, std::memory_order_acquire);
}

void SlabRef::reset() noexcept {
  const unsigned words = width_ / 2;
  for (unsigned i = 0; i + 1 < words; ++i)
    std::atomic_ref<std::uint64_t>(words_[i]).store(kEmptyPair, std::memory_order_relaxed);
  std::atomic_ref<std::uint64_t>(words_[words - 1]).store(kLastWordInit, std::memory_order_release);
}

HeadArena::HeadArena(std::span<const std::uint32_t> bucket_count, unsigned width) : width_(width) {
  SlabLayout::validate_width(width);
  offsets_.resize(bucket_count.size() + 1);
  std::uint64_t running = 0;
  for (std::size_t v = 0; v < bucket_count.size(); ++v) {
    if (bucket_count[v] == 0)
      throw Error(Errc::ConfigError, "bucket count of vertex " + std::to_string(v) + " is zero");
    offsets_[v] = running;
    running += bucket_count[v];
    if (running > kMaxPoolHandles)
      throw Error(Errc::CapacityOverflow, "head slab count exceeds handle space");
  }
  offsets_.back() = running;
  total_ = running;
  if (total_ == 0) return;

  const std::uint64_t words = total_ * (width_ / 2);
  try {
    storage_.reset(new std::uint64_t[words]);
  } catch (const std::bad_alloc&) {
    throw Error(Errc::CapacityOverflow, "cannot allocate " + std::to_string(total_) + " head slabs");
  }
  ++allocations_;
  for (std::uint64_t i = 0; i < total_; ++i) slab(i).reset();
}

SlabPool::SlabPool(unsigned width, std::uint64_t max_slabs)
    : width_(width), max_slabs_(std::min(max_slabs, kMaxPoolHandles)) {
  SlabLayout::validate_width(width);
  const std::uint64_t chunk = std::uint64_t{1} << kChunkBits;
  chunks_.reserve((max_slabs_ + chunk - 1) / chunk);
}

SlabHandle SlabPool::allocate() {
  std::lock_guard lock(mutex_);
  if (!free_list_.empty()) {
    SlabHandle handle = free_list_.back();
    free_list_.pop_back();
    slab(handle).reset();
    return handle;
  }
  if (created_ >= max_slabs_)
    throw Error(Errc::CapacityOverflow, "slab pool exhausted at " + std::to_string(max_slabs_) + " slabs");
  const std::uint64_t chunk_index = created_ >> kChunkBits;
  if (chunk_index >= chunks_.size()) {
    const std::size_t words = (std::size_t{1} << kChunkBits) * (width_ / 2);
    try {
      chunks_.emplace_back(new std::uint64_t[words]);
    } catch (const std::bad_alloc&) {
      throw Error(Errc::CapacityOverflow, "cannot grow slab pool");
    }
  }
  auto handle = static_cast<SlabHandle>(created_++);
  slab(handle).reset();
  return handle;
}

void SlabPool::release(SlabHandle handle) {
  std::lock_guard lock(mutex_);
  free_list_.push_back(handle);
}

std::size_t SlabPool::live() const {
  std::lock_guard lock(mutex_);
  return created_ - free_list_.size();
}

std::size_t SlabPool::created() const {
  std::lock_guard lock(mutex_);
  return created_;
}

std::size_t SlabPool::free_count() const {
  std::lock_guard lock(mutex_);
  return free_list_.size();
}

void SlabList::mark_updated() noexcept {
  if (tracking_ != nullptr) std::atomic_ref<std::uint8_t>(tracking_->is_updated).store(1, std::memory_order_release);
}

// Claims the first writable cell of `s`. Returns false when the slab has none.
// A lost race is reported through lane == kInvalidLane with a true result so the
// caller rescans the slab for the key.
bool SlabList::claim(SlabRef s, std::uint32_t key, Weight weight, LaneId& lane) {
  const bool reuse = tracking_ == nullptr;
  for (unsigned slot = 0; slot < layout_.capacity(); ++slot) {
    const LaneId l = layout_.key_lane(slot);
    if (layout_.kind == StoreKind::Map) {
      std::uint64_t pair = s.load_pair(l / 2);
      const auto current = SlabRef::pair_key(pair);
      if (current == kEmptyKey || (reuse && current == kTombstoneKey)) {
        lane = s.cas_pair(l / 2, pair, SlabRef::pack_pair(key, weight)) ? l : kInvalidLane;
        return true;
      }
    } else {
      std::uint32_t current = s.load(l);
      if (current == kEmptyKey || (reuse && current == kTombstoneKey)) {
        lane = s.cas(l, current, key) ? l : kInvalidLane;
        return true;
      }
    }
  }
  return false;
}

InsertOutcome SlabList::insert(std::uint32_t key, std::optional<Weight> weight) {
  if (is_sentinel_key(key)) throw Error(Errc::SentinelKey, "cannot insert sentinel key " + std::to_string(key));
  const bool map = layout_.kind == StoreKind::Map;
  if (map && !weight) throw Error(Errc::ConfigError, "map slab list requires a weight");
  const Weight w = weight.value_or(0);

  // With tombstone reuse a free cell may precede the key's current cell, so
  // the whole chain is checked before anything is claimed.
  if (tracking_ == nullptr) {
    if (!map && search(key)) return InsertOutcome::AlreadyPresent;
    if (map && overwrite(key, w)) return InsertOutcome::Updated;
  }

  for (SlabHandle handle = kIndexPointer;;) {
    SlabRef s = slab(handle);
    for (unsigned slot = 0; slot < layout_.capacity(); ++slot) {
      const LaneId l = layout_.key_lane(slot);
      if (!map) {
        if (s.load(l) == key) return InsertOutcome::AlreadyPresent;
        continue;
      }
      std::uint64_t pair = s.load_pair(l / 2);
      while (SlabRef::pair_key(pair) == key) {
        if (s.cas_pair(l / 2, pair, SlabRef::pack_pair(key, w))) return InsertOutcome::Updated;
      }
    }

    LaneId lane = kInvalidLane;
    if (claim(s, key, w, lane)) {
      if (lane == kInvalidLane) continue;  // lost the cell, rescan this slab
      mark_updated();
      return InsertOutcome::Inserted;
    }

    SlabHandle next = s.next();
    if (next == kInvalidAddress) {
      SlabHandle fresh = pool_->allocate();
      SlabHandle expected = kInvalidAddress;
      if (s.cas(layout_.next_lane(), expected, fresh)) {
        next = fresh;
      } else {
        pool_->release(fresh);
        next = expected;
      }
    }
    handle = next;
  }
}

bool SlabList::overwrite(std::uint32_t key, Weight weight) {
  for (SlabHandle handle = kIndexPointer; handle != kInvalidAddress;) {
    SlabRef s = slab(handle);
    for (unsigned slot = 0; slot < layout_.capacity(); ++slot) {
      const unsigned pair_index = layout_.key_lane(slot) / 2;
      std::uint64_t pair = s.load_pair(pair_index);
      while (SlabRef::pair_key(pair) == key) {
        if (s.cas_pair(pair_index, pair, SlabRef::pack_pair(key, weight))) return true;
      }
    }
    handle = s.next();
  }
  return false;
}

bool SlabList::erase(std::uint32_t key) {
  if (is_sentinel_key(key)) throw Error(Errc::SentinelKey, "cannot delete sentinel key " + std::to_string(key));
  const bool map = layout_.kind == StoreKind::Map;
  for (SlabHandle handle = kIndexPointer; handle != kInvalidAddress;) {
    SlabRef s = slab(handle);
    for (unsigned slot = 0; slot < layout_.capacity(); ++slot) {
      const LaneId l = layout_.key_lane(slot);
      if (map) {
        std::uint64_t pair = s.load_pair(l / 2);
        while (SlabRef::pair_key(pair) == key) {
          if (s.cas_pair(l / 2, pair, kTombstonePair)) return true;
        }
      } else {
        std::uint32_t current = s.load(l);
        if (current == key && s.cas(l, current, kTombstoneKey)) return true;
      }
    }
    handle = s.next();
  }
  return false;
}

SearchResult SlabList::search(std::uint32_t key) const {
  if (is_sentinel_key(key)) throw Error(Errc::SentinelKey, "cannot search sentinel key " + std::to_string(key));
  const bool map = layout_.kind == StoreKind::Map;
  for (SlabHandle handle = kIndexPointer; handle != kInvalidAddress;) {
    SlabRef s = slab(handle);
    for (unsigned slot = 0; slot < layout_.capacity(); ++slot) {
      const LaneId l = layout_.key_lane(slot);
      if (map) {
        std::uint64_t pair = s.load_pair(l / 2);
        if (SlabRef::pair_key(pair) == key) return {true, SlabRef::pair_weight(pair)};
      } else if (s.load(l) == key) {
        return {true, 1};
      }
    }
    handle = s.next();
  }
  return {};
}

SlabHandle SlabList::tail() const noexcept {
  SlabHandle handle = kIndexPointer;
  for (SlabHandle next = slab(handle).next(); next != kInvalidAddress; next = slab(handle).next()) handle = next;
  return handle;
}

std::size_t SlabList::slab_count() const noexcept {
  std::size_t count = 0;
  for_each_slab([&](SlabHandle, SlabRef) { ++count; });
  return count;
}

std::size_t SlabList::live_count() const noexcept {
  std::size_t count = 0;
  for_each_slab([&](SlabHandle, SlabRef s) {
    for (unsigned slot = 0; slot < layout_.capacity(); ++slot)
      if (!is_sentinel_key(s.load(layout_.key_lane(slot)))) ++count;
  });
  return count;
}

void SlabList::seal() {
  if (tracking_ == nullptr) return;
  std::atomic_ref<std::uint8_t> flag(tracking_->is_updated);
  if (flag.load(std::memory_order_acquire) == 0) return;

  const SlabHandle last = tail();
  SlabRef s = slab(last);
  LaneId lane = kInvalidLane;
  for (unsigned slot = 0; slot < layout_.capacity(); ++slot) {
    const LaneId l = layout_.key_lane(slot);
    if (s.load(l) == kEmptyKey) {
      lane = l;
      break;
    }
  }
  tracking_->handle = last;
  tracking_->lane = lane;
  flag.store(0, std::memory_order_release);
}

}  // namespace dyngraph
