#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dyngraph/types.hpp"

namespace dyngraph {

enum class EdgeFormat { Auto, Snap, DimacsGr, WeightedTsv };

EdgeFormat parse_edge_format(const std::string& name);
const char* edge_format_name(EdgeFormat format);

struct EdgeList {
  std::vector<Edge> edges;
  std::size_t vertex_n = 0;
  bool weighted = false;
  EdgeFormat format = EdgeFormat::Auto;
  // original_id[compact id] is the id as written in the file (0-based for DIMACS).
  std::vector<std::uint64_t> original_id;

  // Compact id of a file id, or kInvalidVertex if the file never mentions it.
  VertexId compact(std::uint64_t file_id) const;
};

EdgeList parse_edge_list(const std::string& path, EdgeFormat format = EdgeFormat::Auto);
EdgeList parse_edge_stream(std::istream& in, EdgeFormat format = EdgeFormat::Auto);

// Both orientations of every non-loop edge, deduplicated.
std::vector<Edge> symmetrize(const std::vector<Edge>& edges);
// One (min, max) copy of every undirected edge.
std::vector<Edge> undirected_unique(const std::vector<Edge>& edges);

enum class BatchSource {
  Held,      // batches are withheld from the base and inserted later
  FromBase,  // batches are drawn from the base and deleted later
};

struct BatchSplit {
  std::vector<Edge> base;
  std::vector<std::vector<Edge>> batches;
};

// Seeded shuffle, then base = the first floor(base_fraction * |E|) edges.
// Held batches follow the base in shuffled order; FromBase batches are
// disjoint slices of the base.
BatchSplit split_batches(const std::vector<Edge>& edges, double base_fraction, std::size_t batch_size,
                         std::size_t batch_count, std::uint64_t seed, BatchSource source = BatchSource::Held);

}  // namespace dyngraph
