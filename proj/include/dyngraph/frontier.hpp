#pragma once

#include <array>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dyngraph/error.hpp"

namespace dyngraph {

// Growable work list with an atomically advanced size. Storage is a fixed
// directory of geometrically growing segments, so committed items never move
// while other groups claim space.
template <class T>
class Frontier {
 public:
  static constexpr std::size_t kUnbounded = std::size_t{1} << 40;

  explicit Frontier(std::size_t max_items = kUnbounded) : max_items_(max_items) {}

  Frontier(const Frontier&) = delete;
  Frontier& operator=(const Frontier&) = delete;

  Frontier(Frontier&& other) noexcept : max_items_(other.max_items_) { steal(other); }
  Frontier& operator=(Frontier&& other) noexcept {
    if (this != &other) {
      release();
      max_items_ = other.max_items_;
      steal(other);
    }
    return *this;
  }

  ~Frontier() { release(); }

  std::size_t size() const noexcept { return size_.load(std::memory_order_acquire); }
  bool empty() const noexcept { return size() == 0; }
  std::size_t max_items() const noexcept { return max_items_; }

  const T& operator[](std::size_t i) const noexcept { return slot(i); }
  T& operator[](std::size_t i) noexcept { return slot(i); }

  // Reserves `count` consecutive slots and returns the first index.
  std::size_t claim(std::size_t count) {
    if (count == 0) return size();
    const std::size_t base = size_.fetch_add(count, std::memory_order_acq_rel);
    if (base + count > max_items_) {
      size_.fetch_sub(count, std::memory_order_acq_rel);
      throw Error(Errc::CapacityOverflow, "frontier capacity " + std::to_string(max_items_) + " exceeded");
    }
    for (unsigned k = locate(base).segment, last = locate(base + count - 1).segment; k <= last; ++k) ensure(k);
    return base;
  }

  void push_back(const T& value) { slot(claim(1)) = value; }

  void clear() noexcept { size_.store(0, std::memory_order_release); }

  std::vector<T> to_vector() const {
    std::vector<T> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(slot(i));
    return out;
  }

 private:
  static constexpr std::size_t kFirstSegment = 256;
  static constexpr unsigned kSegments = 40;

  struct Location {
    unsigned segment;
    std::size_t offset;
  };

  // Segment k holds kFirstSegment << k items starting at kFirstSegment * (2^k - 1).
  static Location locate(std::size_t i) noexcept {
    const auto segment = static_cast<unsigned>(std::bit_width(i / kFirstSegment + 1) - 1);
    return {segment, i - kFirstSegment * ((std::size_t{1} << segment) - 1)};
  }

  T& slot(std::size_t i) const noexcept {
    const Location at = locate(i);
    return segments_[at.segment].load(std::memory_order_acquire)[at.offset];
  }

  void ensure(unsigned k) {
    if (segments_[k].load(std::memory_order_acquire) != nullptr) return;
    T* fresh = new T[kFirstSegment << k]();
    T* expected = nullptr;
    if (!segments_[k].compare_exchange_strong(expected, fresh, std::memory_order_acq_rel)) delete[] fresh;
  }

  void release() noexcept {
    for (auto& segment : segments_) delete[] segment.exchange(nullptr);
    size_.store(0);
  }

  void steal(Frontier& other) noexcept {
    for (unsigned k = 0; k < kSegments; ++k) segments_[k].store(other.segments_[k].exchange(nullptr));
    size_.store(other.size_.exchange(0));
  }

  std::size_t max_items_;
  std::atomic<std::size_t> size_{0};
  mutable std::array<std::atomic<T*>, kSegments> segments_{};
};

}  // namespace dyngraph
