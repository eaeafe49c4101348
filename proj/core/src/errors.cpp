#include "harmonet/errors.hpp"

namespace harmonet {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotEmbedded: return "NotEmbedded";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InconsistentMap: return "InconsistentMap";
    case ErrorCode::DegenerateEdgeForLength: return "DegenerateEdgeForLength";
    case ErrorCode::NotConstantSpeed: return "NotConstantSpeed";
    case ErrorCode::CollapsedEdge: return "CollapsedEdge";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::InconsistentField: return "InconsistentField";
    case ErrorCode::NotGeodesicMap: return "NotGeodesicMap";
    case ErrorCode::MissingField: return "MissingField";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace harmonet
