#include "dyngraph/error.hpp"
#include "dyngraph/types.hpp"

namespace dyngraph {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::CapacityOverflow: return "CapacityOverflow";
    case Errc::SentinelKey: return "SentinelKey";
    case Errc::BadLoadFactor: return "BadLoadFactor";
    case Errc::BadWidth: return "BadWidth";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::BucketOutOfRange: return "BucketOutOfRange";
    case Errc::LaneOutOfRange: return "LaneOutOfRange";
    case Errc::TrackingDisabled: return "TrackingDisabled";
    case Errc::IterateEnd: return "IterateEnd";
    case Errc::UnweightedGraph: return "UnweightedGraph";
    case Errc::WeightedGraph: return "WeightedGraph";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::BadDamping: return "BadDamping";
    case Errc::BadEpsilon: return "BadEpsilon";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::DivisibilityViolation: return "DivisibilityViolation";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::InsufficientEdges: return "InsufficientEdges";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

EdgeBatch EdgeBatch::materialized() const {
  EdgeBatch out = *this;
  out.directed = true;
  if (directed) return out;
  for (std::size_t i = 0; i < size(); ++i) {
    out.src.push_back(dst[i]);
    out.dst.push_back(src[i]);
    if (weighted()) out.weights.push_back(weights[i]);
  }
  return out;
}

std::vector<Edge> EdgeBatch::edges() const {
  std::vector<Edge> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(edge(i));
  return out;
}

EdgeBatch EdgeBatch::from_edges(const std::vector<Edge>& edges, bool with_weights, bool directed) {
  EdgeBatch batch;
  batch.directed = directed;
  for (const Edge& e : edges) batch.add(e, with_weights);
  return batch;
}

}  // namespace dyngraph
