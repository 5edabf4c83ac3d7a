#include "dyngraph/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string_view>
#include <tuple>

#include "dyngraph/error.hpp"

namespace dyngraph {

namespace {

struct RawEdge {
  std::uint64_t u;
  std::uint64_t v;
  std::uint64_t w;
  bool has_weight;
};

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != ',') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::uint64_t to_number(std::string_view field, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size())
    throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  return value;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

EdgeFormat detect(const std::vector<std::string>& lines) {
  for (const std::string& line : lines) {
    const auto fields = split_fields(line);
    if (fields.empty() || fields[0][0] == '#' || fields[0][0] == '%') continue;
    if (fields[0] == "c" || fields[0] == "p" || fields[0] == "a") return EdgeFormat::DimacsGr;
    return fields.size() >= 3 ? EdgeFormat::WeightedTsv : EdgeFormat::Snap;
  }
  return EdgeFormat::Snap;
}

}  // namespace

EdgeFormat parse_edge_format(const std::string& name) {
  if (name == "auto") return EdgeFormat::Auto;
  if (name == "snap") return EdgeFormat::Snap;
  if (name == "dimacs-gr") return EdgeFormat::DimacsGr;
  if (name == "weighted-tsv") return EdgeFormat::WeightedTsv;
  throw Error(Errc::ConfigError, "unknown edge format '" + name + "'");
}

const char* edge_format_name(EdgeFormat format) {
  switch (format) {
    case EdgeFormat::Auto: return "auto";
    case EdgeFormat::Snap: return "snap";
    case EdgeFormat::DimacsGr: return "dimacs-gr";
    case EdgeFormat::WeightedTsv: return "weighted-tsv";
  }
  return "?";
}

VertexId EdgeList::compact(std::uint64_t file_id) const {
  const auto it = std::lower_bound(original_id.begin(), original_id.end(), file_id);
  if (it == original_id.end() || *it != file_id) return kInvalidVertex;
  return static_cast<VertexId>(it - original_id.begin());
}

EdgeList parse_edge_list(const std::string& path, EdgeFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return parse_edge_stream(in, format);
}

EdgeList parse_edge_stream(std::istream& in, EdgeFormat format) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  if (format == EdgeFormat::Auto) format = detect(lines);

  std::vector<RawEdge> raw;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = split_fields(lines[i]);
    if (fields.empty() || fields[0][0] == '#' || fields[0][0] == '%') continue;
    if (format == EdgeFormat::DimacsGr) {
      if (fields[0] == "c" || fields[0] == "p") continue;
      if (fields[0] != "a" || fields.size() != 4) fail(line_no, "expected 'a u v w'");
      const std::uint64_t u = to_number(fields[1], line_no);
      const std::uint64_t v = to_number(fields[2], line_no);
      if (u == 0 || v == 0) fail(line_no, "DIMACS ids are 1-based");
      raw.push_back({u - 1, v - 1, to_number(fields[3], line_no), true});
      continue;
    }
    if (fields.size() < 2) fail(line_no, "expected 'u v'");
    RawEdge e{to_number(fields[0], line_no), to_number(fields[1], line_no), 1, false};
    if (format == EdgeFormat::WeightedTsv) {
      if (fields.size() < 3) fail(line_no, "expected 'u v w'");
      e.w = to_number(fields[2], line_no);
      e.has_weight = true;
    }
    raw.push_back(e);
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].has_weight && (raw[i].w == 0 || raw[i].w > 0xFFFFFFFFull))
      throw Error(Errc::ParseError, "edge " + std::to_string(i) + ": weight must be in [1, 2^32)");
  }
  if (raw.empty()) throw Error(Errc::EmptyGraph, "no edges in input");

  EdgeList list;
  list.format = format;
  list.weighted = format != EdgeFormat::Snap;
  for (const RawEdge& e : raw) {
    list.original_id.push_back(e.u);
    list.original_id.push_back(e.v);
  }
  std::sort(list.original_id.begin(), list.original_id.end());
  list.original_id.erase(std::unique(list.original_id.begin(), list.original_id.end()), list.original_id.end());
  if (list.original_id.size() >= kTombstoneKey) throw Error(Errc::CapacityOverflow, "too many distinct vertex ids");
  list.vertex_n = list.original_id.size();
  list.edges.reserve(raw.size());
  for (const RawEdge& e : raw)
    list.edges.push_back({list.compact(e.u), list.compact(e.v), static_cast<Weight>(e.w)});
  return list;
}

std::vector<Edge> symmetrize(const std::vector<Edge>& edges) {
  std::vector<Edge> out;
  out.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    if (e.src == e.dst) continue;
    out.push_back(e);
    out.push_back({e.dst, e.src, e.weight});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Edge& a, const Edge& b) { return a.src == b.src && a.dst == b.dst; }),
            out.end());
  return out;
}

std::vector<Edge> undirected_unique(const std::vector<Edge>& edges) {
  std::vector<Edge> out;
  for (const Edge& e : edges) {
    if (e.src == e.dst) continue;
    out.push_back({std::min(e.src, e.dst), std::max(e.src, e.dst), e.weight});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Edge& a, const Edge& b) { return a.src == b.src && a.dst == b.dst; }),
            out.end());
  return out;
}

BatchSplit split_batches(const std::vector<Edge>& edges, double base_fraction, std::size_t batch_size,
                         std::size_t batch_count, std::uint64_t seed, BatchSource source) {
  if (!(base_fraction >= 0.0 && base_fraction <= 1.0))
    throw Error(Errc::ConfigError, "base fraction must be in [0, 1]");
  std::vector<Edge> shuffled = edges;
  std::mt19937_64 rng(seed);
  // Fisher-Yates with our own index draws so the split is identical across standard libraries.
  for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng() % i]);

  const auto base_n = static_cast<std::size_t>(std::floor(base_fraction * static_cast<double>(shuffled.size())));
  const std::size_t needed = batch_size * batch_count;
  const std::size_t available = source == BatchSource::Held ? shuffled.size() - base_n : base_n;
  if (needed > available)
    throw Error(Errc::InsufficientEdges, "need " + std::to_string(needed) + " batch edges, only " +
                                             std::to_string(available) + " available");

  BatchSplit split;
  split.base.assign(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(base_n));
  const std::size_t first = source == BatchSource::Held ? base_n : 0;
  for (std::size_t k = 0; k < batch_count; ++k) {
    const auto from = shuffled.begin() + static_cast<std::ptrdiff_t>(first + k * batch_size);
    split.batches.emplace_back(from, from + static_cast<std::ptrdiff_t>(batch_size));
  }
  return split;
}

}  // namespace dyngraph
