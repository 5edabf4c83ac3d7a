#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "dyngraph/error.hpp"
#include "dyngraph/executor.hpp"
#include "dyngraph/slab_store.hpp"

using namespace dyngraph;

namespace {

// One list backed by a one-slab arena and a private pool.
struct ListFixture {
  explicit ListFixture(unsigned width = 32, StoreKind kind = StoreKind::Set, bool tracking = false)
      : counts{1}, arena(counts, width), pool(width), layout{width, kind}, tracked(tracking) {}

  SlabList list() { return SlabList(arena.head(0, 0), pool, layout, tracked ? &state : nullptr); }

  std::vector<std::uint32_t> counts;
  HeadArena arena;
  SlabPool pool;
  SlabLayout layout;
  bool tracked;
  ListUpdateState state;
};

}  // namespace

TEST_CASE("head arena offsets are the exclusive scan of bucket counts") {
  const std::vector<std::uint32_t> counts{1, 2, 1};
  HeadArena arena(counts, 32);
  CHECK(std::vector<std::uint64_t>(arena.offsets().begin(), arena.offsets().end()) == std::vector<std::uint64_t>{0, 1, 3});
  CHECK(arena.total() == 4);
  CHECK(arena.allocation_count() == 1);

  const std::vector<std::uint32_t> single{1};
  HeadArena one(single, 32);
  CHECK(one.offsets().size() == 1);
  CHECK(one.total() == 1);
}

TEST_CASE("head slabs start empty with no successor") {
  const std::vector<std::uint32_t> counts{6, 1, 3};
  HeadArena arena(counts, 8);
  CHECK(std::vector<std::uint64_t>(arena.offsets().begin(), arena.offsets().end()) == std::vector<std::uint64_t>{0, 6, 7});
  CHECK(arena.total() == 10);
  for (std::uint64_t i = 0; i < arena.total(); ++i) {
    for (LaneId lane = 0; lane + 1 < 8; ++lane) CHECK(arena.slab(i).load(lane) == kEmptyKey);
    CHECK(arena.slab(i).next() == kInvalidAddress);
  }
}

TEST_CASE("zero bucket count is rejected") {
  const std::vector<std::uint32_t> counts{1, 0};
  CHECK_THROWS_AS(HeadArena(counts, 32), Error);
}

TEST_CASE("slab widths must be even and within range") {
  CHECK_NOTHROW(SlabLayout::validate_width(4));
  CHECK_NOTHROW(SlabLayout::validate_width(64));
  for (unsigned bad : {0u, 2u, 5u, 66u, 128u}) {
    try {
      SlabLayout::validate_width(bad);
      FAIL("accepted width " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::BadWidth);
    }
  }
}

TEST_CASE("capacities follow the slab layout") {
  CHECK(SlabLayout{32, StoreKind::Set}.capacity() == 31);
  CHECK(SlabLayout{32, StoreKind::Map}.capacity() == 15);
  CHECK(SlabLayout{4, StoreKind::Set}.capacity() == 3);
  CHECK(SlabLayout{4, StoreKind::Map}.capacity() == 1);
}

TEST_CASE("pool allocation") {
  SlabPool pool(32);
  const SlabHandle first = pool.allocate();
  CHECK(first == 0);
  for (LaneId lane = 0; lane < 31; ++lane) CHECK(pool.slab(first).load(lane) == kEmptyKey);
  CHECK(pool.slab(first).next() == kInvalidAddress);

  pool.release(first);
  CHECK(pool.allocate() == first);

  std::set<SlabHandle> seen{first};
  for (int i = 1; i < 1000; ++i) seen.insert(pool.allocate());
  CHECK(seen.size() == 1000);
  CHECK(pool.live() == 1000);
}

TEST_CASE("recycled slabs come back cleared") {
  SlabPool pool(4);
  const SlabHandle h = pool.allocate();
  pool.slab(h).store(0, 17);
  pool.release(h);
  CHECK(pool.allocate() == h);
  CHECK(pool.slab(h).load(0) == kEmptyKey);
}

TEST_CASE("pool exhaustion is a capacity error") {
  SlabPool pool(4, 3);
  for (int i = 0; i < 3; ++i) pool.allocate();
  try {
    pool.allocate();
    FAIL("allocated past the limit");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CapacityOverflow);
  }
}

TEST_CASE("set insert, duplicate, delete and search") {
  ListFixture f;
  SlabList list = f.list();
  CHECK(list.insert(5) == InsertOutcome::Inserted);
  CHECK(list.head().load(0) == 5);
  CHECK(list.insert(5) == InsertOutcome::AlreadyPresent);
  CHECK(list.live_count() == 1);
  CHECK(list.search(5).found);
  CHECK_FALSE(list.search(6).found);
  CHECK(list.erase(5));
  CHECK_FALSE(list.search(5).found);
  CHECK(list.head().load(0) == kTombstoneKey);
  CHECK_FALSE(list.erase(7));
}

TEST_CASE("map insert overwrites weights in place") {
  ListFixture f(32, StoreKind::Map);
  SlabList list = f.list();
  CHECK(list.insert(5, 9) == InsertOutcome::Inserted);
  CHECK(list.search(5).found);
  CHECK(list.search(5).weight == 9);
  CHECK(list.insert(5, 4) == InsertOutcome::Updated);
  CHECK(list.search(5).weight == 4);
  CHECK(list.erase(5));
  CHECK(list.head().load_pair(0) == SlabRef::pack_pair(kTombstoneKey, kTombstoneKey));
}

TEST_CASE("sentinel keys and missing map weights are rejected") {
  ListFixture set;
  for (std::uint32_t key : {kEmptyKey, kTombstoneKey, kInvalidVertex}) {
    try {
      set.list().insert(key);
      FAIL("accepted sentinel");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::SentinelKey);
    }
  }
  ListFixture map(32, StoreKind::Map);
  CHECK_THROWS_AS(map.list().insert(3), Error);
}

TEST_CASE("map slabs never write the spare lane") {
  for (unsigned width : {4u, 8u, 32u}) {
    ListFixture f(width, StoreKind::Map);
    SlabList list = f.list();
    for (std::uint32_t k = 0; k < 100; ++k) list.insert(k, k + 1);
    list.for_each_slab([&](SlabHandle, SlabRef s) { CHECK(s.load(width - 2) == kEmptyKey); });
    CHECK(list.live_count() == 100);
  }
}

TEST_CASE("the 32nd key spills into a chained slab") {
  ListFixture f(32, StoreKind::Set, true);
  SlabList list = f.list();
  for (std::uint32_t k = 0; k < 31; ++k) list.insert(k * 7);
  CHECK(list.slab_count() == 1);
  CHECK(f.state.is_updated == 1);
  list.seal();
  CHECK(f.state.handle == kIndexPointer);
  CHECK(f.state.lane == kInvalidLane);

  CHECK(list.insert(1000) == InsertOutcome::Inserted);
  CHECK(list.slab_count() == 2);
  const SlabHandle chained = list.head().next();
  CHECK(chained != kInvalidAddress);
  CHECK(list.slab(chained).load(0) == 1000);
  CHECK(f.state.is_updated == 1);
  list.seal();
  CHECK(f.state.handle == chained);
  CHECK(f.state.lane == 1);
}

TEST_CASE("seal records the next free lane and is idempotent") {
  ListFixture f(32, StoreKind::Set, true);
  SlabList list = f.list();
  for (std::uint32_t k : {4u, 8u, 15u}) list.insert(k);
  list.seal();
  CHECK(f.state.handle == kIndexPointer);
  CHECK(f.state.lane == 3);
  CHECK(f.state.is_updated == 0);
  const ListUpdateState before = f.state;
  list.seal();
  CHECK(f.state.handle == before.handle);
  CHECK(f.state.lane == before.lane);
}

TEST_CASE("tracked lists never reuse tombstones, untracked lists do") {
  ListFixture tracked(4, StoreKind::Set, true);
  SlabList a = tracked.list();
  a.insert(1);
  a.erase(1);
  a.insert(2);
  CHECK(a.head().load(0) == kTombstoneKey);
  CHECK(a.head().load(1) == 2);

  ListFixture plain(4);
  SlabList b = plain.list();
  b.insert(1);
  b.erase(1);
  b.insert(2);
  CHECK(b.head().load(0) == 2);
}

TEST_CASE("reinsertion after delete never duplicates a key across slabs") {
  ListFixture f(4);
  SlabList list = f.list();
  for (std::uint32_t k = 0; k < 9; ++k) list.insert(k);
  list.erase(1);
  CHECK(list.insert(7) == InsertOutcome::AlreadyPresent);
  CHECK(list.insert(100) == InsertOutcome::Inserted);
  CHECK(list.head().load(1) == 100);
}

TEST_CASE("random interleaving matches a dictionary") {
  for (unsigned width : {4u, 32u}) {
    for (StoreKind kind : {StoreKind::Set, StoreKind::Map}) {
      for (bool tracking : {false, true}) {
        ListFixture f(width, kind, tracking);
        SlabList list = f.list();
        std::map<std::uint32_t, std::uint32_t> oracle;
        std::mt19937_64 rng(width * 31 + static_cast<int>(kind) * 7 + tracking);
        for (int step = 0; step < 200; ++step) {
          const std::uint32_t key = rng() % 40;
          const std::uint32_t w = 1 + rng() % 50;
          if (rng() % 2) {
            const bool present = oracle.count(key) > 0;
            const InsertOutcome out = kind == StoreKind::Map ? list.insert(key, w) : list.insert(key);
            CHECK(out == (present ? (kind == StoreKind::Map ? InsertOutcome::Updated : InsertOutcome::AlreadyPresent)
                                  : InsertOutcome::Inserted));
            oracle[key] = kind == StoreKind::Map ? w : 1;
          } else {
            CHECK(list.erase(key) == (oracle.erase(key) > 0));
          }
          for (std::uint32_t k = 0; k < 40; ++k) {
            const SearchResult r = list.search(k);
            REQUIRE(r.found == (oracle.count(k) > 0));
            if (r.found && kind == StoreKind::Map) CHECK(r.weight == oracle[k]);
          }
        }
        CHECK(list.live_count() == oracle.size());
      }
    }
  }
}

TEST_CASE("ten thousand operations then a full sweep") {
  ListFixture f(8, StoreKind::Map);
  SlabList list = f.list();
  std::map<std::uint32_t, std::uint32_t> oracle;
  std::mt19937_64 rng(99);
  for (int step = 0; step < 10000; ++step) {
    const std::uint32_t key = rng() % 500;
    switch (rng() % 3) {
      case 0:
      case 1: {
        const std::uint32_t w = 1 + rng() % 1000;
        list.insert(key, w);
        oracle[key] = w;
        break;
      }
      default:
        list.erase(key);
        oracle.erase(key);
    }
  }
  for (std::uint32_t k = 0; k < 500; ++k) {
    const SearchResult r = list.search(k);
    REQUIRE(r.found == (oracle.count(k) > 0));
    if (r.found) CHECK(r.weight == oracle[k]);
  }
}

TEST_CASE("chains stay acyclic with one incoming link per slab") {
  ListFixture f(4);
  SlabList list = f.list();
  for (std::uint32_t k = 0; k < 300; ++k) list.insert(k);
  std::set<SlabHandle> seen;
  list.for_each_slab([&](SlabHandle h, SlabRef) { CHECK(seen.insert(h).second); });
  CHECK(seen.size() == list.slab_count());
  CHECK(list.slab_count() == 100);
}

TEST_CASE("concurrent inserts of distinct keys all land") {
  for (bool tracking : {false, true}) {
    ListFixture f(4, StoreKind::Set, tracking);
    SlabList list = f.list();
    Executor exec(4);
    exec.parallel_for(2000, [&](std::size_t i) { list.insert(static_cast<std::uint32_t>(i)); });
    CHECK(list.live_count() == 2000);
    for (std::uint32_t k = 0; k < 2000; ++k) REQUIRE(list.search(k).found);
  }
}

TEST_CASE("concurrent duplicate inserts report exactly one insertion") {
  ListFixture f(4, StoreKind::Set, true);
  SlabList list = f.list();
  Executor exec(4);
  std::atomic<int> inserted{0};
  exec.parallel_for(4000, [&](std::size_t i) {
    if (list.insert(static_cast<std::uint32_t>(i % 50)) == InsertOutcome::Inserted) ++inserted;
  });
  CHECK(inserted.load() == 50);
  CHECK(list.live_count() == 50);
}
