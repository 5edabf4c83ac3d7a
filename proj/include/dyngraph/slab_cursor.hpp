#pragma once

#include <cstdint>

#include "dyngraph/dynamic_graph.hpp"

namespace dyngraph {

enum class CursorKind : std::uint8_t { Slab, Bucket, Update };

// Position of a lane group within one vertex's adjacency, one slab at a time.
//
// Slab cursors walk every bucket in index order, Bucket cursors stay inside a
// single slab list, and Update cursors only visit slabs written since the last
// seal. The end position of every kind has handle kInvalidAddress.
class SlabCursor {
 public:
  SlabCursor() = default;

  VertexId vertex() const noexcept { return vertex_; }
  std::uint32_t bucket() const noexcept { return bucket_; }
  SlabHandle handle() const noexcept { return handle_; }
  CursorKind kind() const noexcept { return kind_; }
  bool at_end() const noexcept { return handle_ == kInvalidAddress; }

  // Raw cell read; the caller filters with is_valid_vertex().
  std::uint32_t get(LaneId lane) const;
  // Weight stored next to the key at `lane`; 1 on unweighted graphs.
  Weight weight(LaneId lane) const;
  // First lane holding a new neighbor. Non-zero only on the first slab of an updated list.
  LaneId first_lane_id() const noexcept { return first_lane_; }
  bool is_valid_vertex(LaneId lane) const;

  SlabCursor& operator++();

  friend bool operator==(const SlabCursor& a, const SlabCursor& b) noexcept {
    return a.vertex_ == b.vertex_ && a.bucket_ == b.bucket_ && a.handle_ == b.handle_ && a.kind_ == b.kind_ &&
           a.first_lane_ == b.first_lane_;
  }

 private:
  friend SlabCursor begin(const DynamicGraph&, VertexId);
  friend SlabCursor end(const DynamicGraph&, VertexId);
  friend SlabCursor begin_at(const DynamicGraph&, VertexId, std::uint32_t);
  friend SlabCursor end_at(const DynamicGraph&, VertexId, std::uint32_t);
  friend SlabCursor update_begin(const DynamicGraph&, VertexId);
  friend SlabCursor update_end(const DynamicGraph&, VertexId);

  SlabCursor(const DynamicGraph* graph, VertexId v, std::uint32_t bucket, SlabHandle handle, CursorKind kind,
             LaneId first_lane = 0) noexcept
      : graph_(graph), vertex_(v), bucket_(bucket), handle_(handle), kind_(kind), first_lane_(first_lane) {}

  void make_end() noexcept;
  // Moves an Update cursor to the first updated list at or after `bucket`.
  void seek_updated(std::uint32_t bucket) noexcept;

  const DynamicGraph* graph_ = nullptr;
  VertexId vertex_ = 0;
  std::uint32_t bucket_ = 0;
  SlabHandle handle_ = kInvalidAddress;
  CursorKind kind_ = CursorKind::Slab;
  LaneId first_lane_ = 0;
};

SlabCursor begin(const DynamicGraph& g, VertexId v);
SlabCursor end(const DynamicGraph& g, VertexId v);
SlabCursor begin_at(const DynamicGraph& g, VertexId v, std::uint32_t bucket);
SlabCursor end_at(const DynamicGraph& g, VertexId v, std::uint32_t bucket);
SlabCursor update_begin(const DynamicGraph& g, VertexId v);
SlabCursor update_end(const DynamicGraph& g, VertexId v);

inline SlabCursor& cursor_next(SlabCursor& c) { return ++c; }

}  // namespace dyngraph
