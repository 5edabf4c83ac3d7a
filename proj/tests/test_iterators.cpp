#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "dyngraph/error.hpp"
#include "dyngraph/slab_cursor.hpp"
#include "support.hpp"

using namespace dyngraph;

namespace {

std::vector<VertexId> walk(SlabCursor it, const SlabCursor& stop, unsigned width, std::size_t* slabs = nullptr) {
  std::vector<VertexId> out;
  std::size_t count = 0;
  for (; it != stop; ++it, ++count)
    for (LaneId lane = it.first_lane_id(); lane < width; ++lane)
      if (it.is_valid_vertex(lane)) out.push_back(it.get(lane));
  if (slabs) *slabs = count;
  return out;
}

GraphOptions narrow(bool tracking = false) {
  GraphOptions o;
  o.width = 4;
  o.load_factor = 1.0;
  o.update_tracking = tracking;
  return o;
}

// Inserts keys until every bucket of v holds at least `slabs` slabs.
void fill_buckets(DynamicGraph& g, VertexId v, std::size_t slabs) {
  for (std::uint32_t key = 0;; ++key) {
    bool done = true;
    for (std::uint32_t b = 0; b < g.bucket_count(v); ++b) done = done && g.list(v, b).slab_count() >= slabs;
    if (done) return;
    if (g.list(v, g.bucket_of(v, key)).slab_count() < slabs) g.insert_edge(v, key);
  }
}

}  // namespace

TEST_CASE("an isolated vertex still has one empty slab") {
  DynamicGraph g(3, narrow());
  SlabCursor it = begin(g, 1);
  CHECK(it != end(g, 1));
  CHECK(begin(g, 1) == begin(g, 1));
  for (LaneId lane = 0; lane < 3; ++lane) {
    CHECK(it.get(lane) == kEmptyKey);
    CHECK_FALSE(it.is_valid_vertex(lane));
  }
  ++it;
  CHECK(it == end(g, 1));
}

TEST_CASE("slab iteration crosses buckets and chains") {
  std::vector<std::uint32_t> hints(64, 0);
  hints[1] = 6;
  DynamicGraph g(hints.size(), hints, narrow());
  REQUIRE(g.bucket_count(1) == 2);
  fill_buckets(g, 1, 2);
  REQUIRE(g.list(1, 0).slab_count() == 2);
  REQUIRE(g.list(1, 1).slab_count() == 2);
  std::size_t slabs = 0;
  walk(begin(g, 1), end(g, 1), 4, &slabs);
  CHECK(slabs == 4);
}

TEST_CASE("bucket iteration stays in one list") {
  std::vector<std::uint32_t> hints(64, 0);
  hints[0] = 6;
  DynamicGraph g(hints.size(), hints, narrow());
  std::size_t slabs = 0;
  walk(begin_at(g, 0, 1), end_at(g, 0, 1), 4, &slabs);
  CHECK(slabs == 1);

  fill_buckets(g, 0, 2);
  walk(begin_at(g, 0, 0), end_at(g, 0, 0), 4, &slabs);
  CHECK(slabs == 2);

  try {
    begin_at(g, 0, 2);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BucketOutOfRange);
  }
}

TEST_CASE("slab iteration is the bucket-major concatenation of bucket iterations") {
  std::mt19937_64 rng(3);
  std::vector<std::uint32_t> hints(1000, 0);
  std::fill_n(hints.begin(), 4, 20);
  DynamicGraph g(hints.size(), hints, narrow());
  for (int i = 0; i < 60; ++i) g.insert_edge(rng() % 4, rng() % 1000);
  for (VertexId v = 0; v < 4; ++v) {
    std::vector<VertexId> joined;
    for (std::uint32_t b = 0; b < g.bucket_count(v); ++b) {
      const auto part = walk(begin_at(g, v, b), end_at(g, v, b), 4);
      joined.insert(joined.end(), part.begin(), part.end());
    }
    CHECK(walk(begin(g, v), end(g, v), 4) == joined);
  }
}

TEST_CASE("cursor reads and errors") {
  DynamicGraph g(3, narrow());
  for (VertexId k = 0; k < 3; ++k) g.insert_edge(0, k);
  g.insert_edge(0, 1);
  SlabCursor it = begin(g, 0);
  CHECK(it.get(3) == g.list(0, 0).head().next());
  CHECK_FALSE(it.is_valid_vertex(3));
  try {
    it.get(4);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LaneOutOfRange);
  }
  SlabCursor done = end(g, 0);
  try {
    ++done;
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IterateEnd);
  }
  CHECK_THROWS_AS(done.get(0), Error);
  CHECK_THROWS_AS(begin(g, 3), Error);
}

TEST_CASE("sweeping every cursor reconstructs the adjacency") {
  for (unsigned width : {4u, 32u}) {
    for (bool weighted : {false, true}) {
      GraphOptions o;
      o.width = width;
      o.weighted = weighted;
      const auto edges = testing::gnp(80, 0.1, width, true, weighted ? 64 : 1);
      DynamicGraph g(80, testing::degree_hints(80, edges, false), o);
      g.insert_edges(testing::batch_of(edges, weighted));
      Adjacency rebuilt(80);
      for (VertexId v = 0; v < 80; ++v)
        for (SlabCursor it = begin(g, v), stop = end(g, v); it != stop; ++it)
          for (LaneId lane = 0; lane < width; ++lane)
            if (it.is_valid_vertex(lane)) rebuilt[v][it.get(lane)] = it.weight(lane);
      CHECK(rebuilt == g.snapshot_adjacency());
    }
  }
}

TEST_CASE("update iteration with nothing new is empty") {
  DynamicGraph g(3, narrow(true));
  CHECK(update_begin(g, 0) == update_end(g, 0));
  g.insert_edge(0, 1);
  g.seal_updates();
  CHECK(update_begin(g, 0) == update_end(g, 0));

  DynamicGraph untracked(3, narrow());
  try {
    update_begin(untracked, 0);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TrackingDisabled);
  }
}

TEST_CASE("update iteration starts after the sealed fill level") {
  GraphOptions o;
  o.update_tracking = true;
  DynamicGraph g(100, o);
  for (VertexId k = 1; k <= 5; ++k) g.insert_edge(0, k);
  g.seal_updates();
  g.insert_edge(0, 50);
  g.insert_edge(0, 51);
  SlabCursor it = update_begin(g, 0);
  CHECK(it.first_lane_id() == 5);
  std::size_t slabs = 0;
  CHECK(walk(it, update_end(g, 0), 32, &slabs) == std::vector<VertexId>{50, 51});
  CHECK(slabs == 1);
}

TEST_CASE("updates spilling into a chained slab are visited once") {
  DynamicGraph g(20, narrow(true));
  g.insert_edge(0, 1);
  g.insert_edge(0, 2);
  g.seal_updates();
  for (VertexId k = 10; k < 15; ++k) g.insert_edge(0, k);
  SlabCursor it = update_begin(g, 0);
  CHECK(it.first_lane_id() == 2);
  std::size_t slabs = 0;
  const auto seen = walk(it, update_end(g, 0), 4, &slabs);
  CHECK(slabs == 3);
  CHECK(seen == std::vector<VertexId>{10, 11, 12, 13, 14});
}

TEST_CASE("a full tail at seal time starts the next window in the chained slab") {
  DynamicGraph g(20, narrow(true));
  for (VertexId k = 1; k <= 3; ++k) g.insert_edge(0, k);
  g.seal_updates();
  REQUIRE(g.update_state(0, 0).lane == kInvalidLane);
  g.insert_edge(0, 9);
  SlabCursor it = update_begin(g, 0);
  CHECK(it.handle() != kIndexPointer);
  CHECK(it.first_lane_id() == 0);
  CHECK(walk(it, update_end(g, 0), 4) == std::vector<VertexId>{9});
}

TEST_CASE("update iteration skips untouched buckets") {
  std::vector<std::uint32_t> hints(1000, 0);
  hints[0] = 12;
  DynamicGraph g(hints.size(), hints, narrow(true));
  REQUIRE(g.bucket_count(0) >= 3);
  for (std::uint32_t key = 0; key < 30; ++key) g.insert_edge(0, key);
  g.seal_updates();
  std::uint32_t key = 100;
  while (g.bucket_of(0, key) != g.bucket_count(0) - 1) ++key;
  g.insert_edge(0, key);
  SlabCursor it = update_begin(g, 0);
  CHECK(it.bucket() == g.bucket_count(0) - 1);
  CHECK(walk(it, update_end(g, 0), 4) == std::vector<VertexId>{key});
}

TEST_CASE("random inter-seal windows yield exactly the inserted keys") {
  for (unsigned width : {4u, 32u}) {
    std::mt19937_64 rng(width);
    GraphOptions o;
    o.width = width;
    o.update_tracking = true;
    std::vector<std::uint32_t> hints(5000, 0);
    std::fill_n(hints.begin(), 10, 40);
    DynamicGraph g(hints.size(), hints, o);
    for (int round = 0; round < 20; ++round) {
      std::vector<std::set<VertexId>> fresh(10);
      for (int i = 0; i < 50; ++i) {
        const VertexId u = rng() % 10;
        const VertexId v = rng() % 5000;
        if (g.insert_edge(u, v) == InsertOutcome::Inserted) fresh[u].insert(v);
      }
      for (VertexId u = 0; u < 10; ++u) {
        auto seen = walk(update_begin(g, u), update_end(g, u), width);
        CHECK(std::set<VertexId>(seen.begin(), seen.end()) == fresh[u]);
        CHECK(seen.size() == fresh[u].size());
      }
      g.seal_updates();
    }
  }
}
