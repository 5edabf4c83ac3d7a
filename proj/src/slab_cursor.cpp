#include "dyngraph/slab_cursor.hpp"

#include <atomic>
#include <string>

namespace dyngraph {

namespace {

void check_vertex(const DynamicGraph& g, VertexId v) {
  if (v >= g.vertex_count()) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
}

void check_bucket(const DynamicGraph& g, VertexId v, std::uint32_t bucket) {
  check_vertex(g, v);
  if (bucket >= g.bucket_count(v))
    throw Error(Errc::BucketOutOfRange,
                "bucket " + std::to_string(bucket) + " of vertex " + std::to_string(v) + " (has " +
                    std::to_string(g.bucket_count(v)) + ")");
}

void check_tracking(const DynamicGraph& g) {
  if (!g.tracking()) throw Error(Errc::TrackingDisabled, "update iteration needs update tracking");
}

}  // namespace

std::uint32_t SlabCursor::get(LaneId lane) const {
  if (at_end()) throw Error(Errc::IterateEnd, "read through an end cursor");
  if (lane >= graph_->width()) throw Error(Errc::LaneOutOfRange, "lane " + std::to_string(lane));
  return graph_->slab(vertex_, bucket_, handle_).load(lane);
}

Weight SlabCursor::weight(LaneId lane) const {
  if (!graph_->weighted()) return 1;
  return get(lane + 1);
}

bool SlabCursor::is_valid_vertex(LaneId lane) const {
  return graph_->layout().is_key_lane(lane) && !is_sentinel_key(get(lane));
}

void SlabCursor::make_end() noexcept {
  handle_ = kInvalidAddress;
  first_lane_ = 0;
  if (kind_ != CursorKind::Bucket) bucket_ = 0;
}

void SlabCursor::seek_updated(std::uint32_t bucket) noexcept {
  for (; bucket < graph_->bucket_count(vertex_); ++bucket) {
    const ListUpdateState& state = graph_->update_state(vertex_, bucket);
    if (std::atomic_ref<std::uint8_t>(const_cast<std::uint8_t&>(state.is_updated)).load(std::memory_order_acquire) == 0) continue;
    SlabHandle handle = state.handle;
    LaneId lane = state.lane;
    if (lane == kInvalidLane) {
      // The tail was full at seal time; new cells start in the next chained slab.
      handle = graph_->slab(vertex_, bucket, handle).next();
      lane = 0;
    }
    if (handle == kInvalidAddress) continue;
    bucket_ = bucket;
    handle_ = handle;
    first_lane_ = lane;
    return;
  }
  make_end();
}

SlabCursor& SlabCursor::operator++() {
  if (at_end()) throw Error(Errc::IterateEnd, "increment of an end cursor");
  const SlabHandle next = graph_->slab(vertex_, bucket_, handle_).next();
  first_lane_ = 0;
  if (next != kInvalidAddress) {
    handle_ = next;
    return *this;
  }
  switch (kind_) {
    case CursorKind::Bucket:
      make_end();
      break;
    case CursorKind::Slab:
      if (bucket_ + 1 < graph_->bucket_count(vertex_)) {
        ++bucket_;
        handle_ = kIndexPointer;
      } else {
        make_end();
      }
      break;
    case CursorKind::Update:
      seek_updated(bucket_ + 1);
      break;
  }
  return *this;
}

SlabCursor begin(const DynamicGraph& g, VertexId v) {
  check_vertex(g, v);
  return {&g, v, 0, kIndexPointer, CursorKind::Slab};
}

SlabCursor end(const DynamicGraph& g, VertexId v) {
  check_vertex(g, v);
  return {&g, v, 0, kInvalidAddress, CursorKind::Slab};
}

SlabCursor begin_at(const DynamicGraph& g, VertexId v, std::uint32_t bucket) {
  check_bucket(g, v, bucket);
  return {&g, v, bucket, kIndexPointer, CursorKind::Bucket};
}

SlabCursor end_at(const DynamicGraph& g, VertexId v, std::uint32_t bucket) {
  check_bucket(g, v, bucket);
  return {&g, v, bucket, kInvalidAddress, CursorKind::Bucket};
}

SlabCursor update_begin(const DynamicGraph& g, VertexId v) {
  check_tracking(g);
  check_vertex(g, v);
  SlabCursor cursor(&g, v, 0, kInvalidAddress, CursorKind::Update);
  cursor.seek_updated(0);
  return cursor;
}

SlabCursor update_end(const DynamicGraph& g, VertexId v) {
  check_tracking(g);
  check_vertex(g, v);
  return {&g, v, 0, kInvalidAddress, CursorKind::Update};
}

}  // namespace dyngraph
