#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dyngraph {

enum class Errc {
  CapacityOverflow,
  SentinelKey,
  BadLoadFactor,
  BadWidth,
  VertexOutOfRange,
  BucketOutOfRange,
  LaneOutOfRange,
  TrackingDisabled,
  IterateEnd,
  UnweightedGraph,
  WeightedGraph,
  CycleDetected,
  BadDamping,
  BadEpsilon,
  NotSymmetric,
  DivisibilityViolation,
  ParseError,
  EmptyGraph,
  InsufficientEdges,
  VerificationFailed,
  ConfigError,
  IoError,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dyngraph
