#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "dyngraph/error.hpp"
#include "dyngraph/pagerank.hpp"
#include "support.hpp"

using namespace dyngraph;

namespace {

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

// In-edge graph for the directed edge list.
DynamicGraph in_graph(std::size_t n, const std::vector<Edge>& edges, unsigned width = 32) {
  GraphOptions o;
  o.width = width;
  DynamicGraph g(n, o);
  EdgeBatch batch;
  for (const Edge& e : edges) batch.add(e.dst, e.src);
  g.insert_edges(batch);
  return g;
}

}  // namespace

TEST_CASE("two-cycle splits rank evenly") {
  const DynamicGraph g = in_graph(2, {{0, 1}, {1, 0}});
  const auto out = out_degrees_from_in_graph(g);
  CHECK(out == std::vector<std::uint32_t>{1, 1});
  const PageRankState s = pagerank(g, out);
  CHECK(s.pr[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.pr[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("a lone vertex keeps all the rank") {
  const DynamicGraph g(1);
  const auto out = out_degrees_from_in_graph(g);
  const PageRankState s = pagerank(g, out);
  CHECK(s.pr[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.iterations == 1);
}

TEST_CASE("parameter validation") {
  const DynamicGraph g(2);
  const auto out = out_degrees_from_in_graph(g);
  for (double d : {0.0, 1.0, -0.1, 1.5}) {
    try {
      pagerank(g, out, {d, 1e-5, 100});
      FAIL("accepted damping " << d);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::BadDamping);
    }
  }
  for (double eps : {0.0, -1e-5, std::nan("")}) {
    try {
      pagerank(g, out, {0.85, eps, 100});
      FAIL("accepted eps");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::BadEpsilon);
    }
  }
}

TEST_CASE("PageRank agrees with the dense oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 100;
    const auto edges = testing::gnp(n, 0.04, seed, true);
    oracle::PlainGraph plain(n);
    for (const Edge& e : edges) plain.add(e.src, e.dst);
    unsigned oracle_iters = 0;
    const auto reference = oracle::pagerank(plain, 0.85, 1e-5, 100, &oracle_iters);
    for (unsigned width : {4u, 32u}) {
      const DynamicGraph g = in_graph(n, edges, width);
      const PageRankState s = pagerank(g, out_degrees_from_in_graph(g), {}, Executor(2));
      CHECK(l1(s.pr, reference) <= 1e-6);
      CHECK(s.iterations == oracle_iters);
    }
  }
}

TEST_CASE("rank mass is conserved without dangling vertices") {
  const std::size_t n = 60;
  std::vector<Edge> edges;
  for (VertexId v = 0; v < n; ++v) edges.push_back({v, static_cast<VertexId>((v + 1) % n)});
  auto extra = testing::gnp(n, 0.05, 9, true);
  edges.insert(edges.end(), extra.begin(), extra.end());
  const DynamicGraph g = in_graph(n, edges);
  PageRankOptions o;
  for (unsigned steps = 1; steps < 30; steps += 7) {
    o.max_iter = steps;
    const PageRankState s = pagerank(g, out_degrees_from_in_graph(g), o);
    CHECK(std::abs(std::accumulate(s.pr.begin(), s.pr.end(), 0.0) - 1.0) <= 1e-9);
  }
}

TEST_CASE("warm start matches cold start") {
  std::mt19937_64 rng(4);
  const std::size_t n = 120;
  auto edges = testing::gnp(n, 0.03, 4, true);
  GraphOptions o;
  DynamicGraph g(n, o);
  EdgeBatch base;
  for (const Edge& e : edges) base.add(e.dst, e.src);
  g.insert_edges(base);
  PageRankState state = pagerank(g, out_degrees_from_in_graph(g));
  const std::vector<double> original = state.pr;

  const PageRankState again = pagerank_dynamic(g, out_degrees_from_in_graph(g), state);
  CHECK(again.iterations == 1);
  CHECK(l1(again.pr, state.pr) <= 1e-5);

  std::set<std::pair<VertexId, VertexId>> present;
  for (const Edge& e : edges) present.insert({e.dst, e.src});
  const EdgeBatch batch = testing::batch_of(testing::fresh_edges(n, 40, present, rng, true), false);
  g.insert_edges(batch);
  state = pagerank_dynamic(g, out_degrees_from_in_graph(g), state);
  const PageRankState cold = pagerank(g, out_degrees_from_in_graph(g));
  CHECK(l1(state.pr, cold.pr) <= 1e-4);

  g.delete_edges(batch);
  state = pagerank_dynamic(g, out_degrees_from_in_graph(g), state);
  CHECK(l1(state.pr, original) <= 1e-4);
}

TEST_CASE("size mismatches are configuration errors") {
  const DynamicGraph g(3);
  const std::vector<std::uint32_t> wrong(2, 0);
  CHECK_THROWS_AS(pagerank(g, wrong), Error);
}
