#include "iedm/error.hpp"

namespace iedm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidIri: return "InvalidIri";
    case ErrorCode::InvalidLiteral: return "InvalidLiteral";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::UnknownProperty: return "UnknownProperty";
    case ErrorCode::AlreadyExists: return "AlreadyExists";
    case ErrorCode::LiteralOnObjectProperty: return "LiteralOnObjectProperty";
    case ErrorCode::ObjectOnDataProperty: return "ObjectOnDataProperty";
    case ErrorCode::FrozenClass: return "FrozenClass";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownPrefix: return "UnknownPrefix";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::InvalidMaterial: return "InvalidMaterial";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownExperiment: return "UnknownExperiment";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::VersionConflict: return "VersionConflict";
    case ErrorCode::Forbidden: return "Forbidden";
    case ErrorCode::TemporalOrder: return "TemporalOrder";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace iedm
