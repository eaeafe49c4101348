#pragma once

#include <stdexcept>
#include <string>

namespace harmonet {

enum class ErrorCode {
  NonPositiveWeight,
  DanglingEndpoint,
  Disconnected,
  UnknownVertex,
  NotTangent,
  NotNormal,
  NotEmbedded,
  InvalidConfig,
  InconsistentMap,
  DegenerateEdgeForLength,
  NotConstantSpeed,
  CollapsedEdge,
  NotCritical,
  InconsistentField,
  NotGeodesicMap,
  MissingField,
};

const char* to_string(ErrorCode code);

/// Exception carrying one of the library error kinds.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace harmonet
