#include "mirror/error.hpp"

namespace mirror {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::EmptyAnticones: return "EmptyAnticones";
    case ErrorCode::StabilityOnWall: return "StabilityOnWall";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::UnboundedEnumeration: return "UnboundedEnumeration";
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::PoleAt: return "PoleAt";
    case ErrorCode::NotConverging: return "NotConverging";
    case ErrorCode::KNotOne: return "KNotOne";
    case ErrorCode::GammaPole: return "GammaPole";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ConvergenceMarginTooSmall: return "ConvergenceMarginTooSmall";
    case ErrorCode::MaxSubdivisions: return "MaxSubdivisions";
    case ErrorCode::StripViolation: return "StripViolation";
    case ErrorCode::TailNotCertified: return "TailNotCertified";
    case ErrorCode::MismatchBeyondTolerance: return "MismatchBeyondTolerance";
    case ErrorCode::NotACone: return "NotACone";
    case ErrorCode::NotFanoPolytope: return "NotFanoPolytope";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace mirror
