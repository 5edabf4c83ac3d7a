#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dyngraph/error.hpp"
#include "dyngraph/experiment.hpp"
#include "support.hpp"

using namespace dyngraph;

namespace {

EdgeList random_list(std::size_t n, double p, std::uint64_t seed) {
  EdgeList el;
  el.edges = testing::gnp(n, p, seed, true);
  el.vertex_n = n;
  for (std::size_t i = 0; i < n; ++i) el.original_id.push_back(i);
  return el;
}

ExperimentConfig config(Algorithm algo, Mode mode) {
  ExperimentConfig c;
  c.algorithm = algo;
  c.mode = mode;
  c.batch_size = 50;
  c.batch_count = 3;
  c.base_fraction = mode == Mode::Decremental ? 1.0 : 0.7;
  c.seed = 17;
  return c;
}

std::vector<std::string> checksums(const Report& r) {
  std::vector<std::string> out;
  for (const BatchRow& row : r.rows) out.push_back(row.checksum);
  return out;
}

}  // namespace

TEST_CASE("every algorithm verifies in every supported mode") {
  const EdgeList el = random_list(150, 0.03, 1);
  for (Algorithm algo : {Algorithm::Bfs, Algorithm::Sssp, Algorithm::PageRank, Algorithm::TriangleCount, Algorithm::Wcc}) {
    for (Mode mode : {Mode::Incremental, Mode::Decremental}) {
      if (algo == Algorithm::Wcc && mode == Mode::Decremental) continue;
      for (unsigned width : {4u, 32u}) {
        ExperimentConfig c = config(algo, mode);
        c.width = width;
        CAPTURE(algorithm_name(algo));
        CAPTURE(mode_name(mode));
        const Report r = run_experiment(c, el);
        REQUIRE(r.rows.size() == 3);
        for (const BatchRow& row : r.rows) {
          CHECK(row.s == doctest::Approx(row.cum_static / row.cum_dynamic));
          CHECK(row.checksum.size() == 16);
        }
      }
    }
  }
}

TEST_CASE("fixed seeds reproduce checksums") {
  const EdgeList el = random_list(150, 0.03, 2);
  for (Algorithm algo : {Algorithm::Sssp, Algorithm::PageRank, Algorithm::TriangleCount}) {
    const ExperimentConfig c = config(algo, Mode::Incremental);
    CHECK(checksums(run_experiment(c, el)) == checksums(run_experiment(c, el)));
  }
}

TEST_CASE("hashing and worker count do not change results") {
  const EdgeList el = random_list(150, 0.03, 3);
  ExperimentConfig c = config(Algorithm::Sssp, Mode::Incremental);
  const auto reference = checksums(run_experiment(c, el));
  c.hashing = false;
  CHECK(checksums(run_experiment(c, el)) == reference);
  c.workers = 3;
  CHECK(checksums(run_experiment(c, el)) == reference);
}

TEST_CASE("a corrupted dynamic result fails verification") {
  const EdgeList el = random_list(150, 0.05, 4);
  for (Algorithm algo : {Algorithm::Bfs, Algorithm::Sssp, Algorithm::PageRank, Algorithm::TriangleCount, Algorithm::Wcc}) {
    ExperimentConfig c = config(algo, Mode::Incremental);
    c.inject_fault = true;
    try {
      run_experiment(c, el);
      FAIL("fault went unnoticed for " << algorithm_name(algo));
    } catch (const Error& e) {
      CHECK(e.code() == Errc::VerificationFailed);
    }
  }
}

TEST_CASE("configuration errors") {
  const EdgeList el = random_list(50, 0.1, 5);
  try {
    run_experiment(config(Algorithm::Wcc, Mode::Decremental), el);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigError);
  }
  ExperimentConfig far = config(Algorithm::Bfs, Mode::Incremental);
  far.src = 50;
  CHECK_THROWS_AS(run_experiment(far, el), Error);
  ExperimentConfig big = config(Algorithm::Bfs, Mode::Incremental);
  big.batch_size = 100000;
  try {
    run_experiment(big, el);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientEdges);
  }
  ExperimentConfig directed_tc = config(Algorithm::TriangleCount, Mode::Incremental);
  directed_tc.symmetrize = false;
  CHECK_THROWS_AS(run_experiment(directed_tc, el), Error);
  for (const char* bad : {"dfs", "weird"}) CHECK_THROWS_AS(parse_algorithm(bad), Error);
}

TEST_CASE("no batches leaves only the baseline") {
  const EdgeList el = random_list(60, 0.05, 6);
  ExperimentConfig c = config(Algorithm::Bfs, Mode::Incremental);
  c.batch_count = 0;
  const Report r = run_experiment(c, el);
  CHECK(r.rows.empty());
  CHECK(r.base_checksum.size() == 16);
  CHECK(render_report(r, ReportFormat::Csv) == "batch_idx,t_dynamic_ms,t_static_ms,cum_dynamic,cum_static,s,checksum\n");

  c.mode = Mode::Static;
  c.batch_count = 5;
  const Report s = run_experiment(c, el);
  CHECK(s.rows.empty());
  CHECK(s.base_edges == el.edges.size());
}

TEST_CASE("reports round-trip through JSON and CSV") {
  const EdgeList el = random_list(150, 0.05, 7);
  const Report r = run_experiment(config(Algorithm::PageRank, Mode::Incremental), el);
  const auto doc = nlohmann::json::parse(render_report(r, ReportFormat::Json));
  REQUIRE(doc["rows"].size() == r.rows.size());
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(doc["rows"][i]["checksum"] == r.rows[i].checksum);
    CHECK(doc["rows"][i]["s"].get<double>() == r.rows[i].s);
    CHECK(doc["rows"][i]["iterations_dynamic"].get<unsigned>() == r.rows[i].iterations_dynamic);
  }

  const auto path = std::filesystem::temp_directory_path() / "dyngraph_report_test.csv";
  write_report(r, path.string(), ReportFormat::Csv);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "batch_idx,t_dynamic_ms,t_static_ms,cum_dynamic,cum_static,s,checksum,iterations_dynamic,iterations_static");
  std::size_t lines = 0;
  for (std::string line; std::getline(in, line);) {
    std::stringstream fields(line);
    std::vector<std::string> cols;
    for (std::string f; std::getline(fields, f, ',');) cols.push_back(f);
    REQUIRE(cols.size() == 9);
    CHECK(std::stod(cols[5]) == doctest::Approx(std::stod(cols[4]) / std::stod(cols[3])));
    ++lines;
  }
  CHECK(lines == r.rows.size());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_report(r, "/nonexistent/dir/report.csv", ReportFormat::Csv), Error);
}

TEST_CASE("checksums are FNV-1a") {
  CHECK(fnv1a_hex("", 0) == "cbf29ce484222325");
  CHECK(fnv1a_hex("a", 1) == "af63dc4c8601ec8c");
}
