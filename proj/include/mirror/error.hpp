#pragma once

#include <stdexcept>
#include <string>

namespace mirror {

enum class ErrorCode {
  NotGenerating,
  RankDeficient,
  EmptyAnticones,
  StabilityOnWall,
  NotSimplicial,
  UnboundedEnumeration,
  DegenerateParameters,
  DegreeMismatch,
  PoleAt,
  NotConverging,
  KNotOne,
  GammaPole,
  DomainError,
  ConvergenceMarginTooSmall,
  MaxSubdivisions,
  StripViolation,
  TailNotCertified,
  MismatchBeyondTolerance,
  NotACone,
  NotFanoPolytope,
  InvalidInput,
  ParseError,
  SchemaError,
};

const char* error_name(ErrorCode code);

class MirrorError : public std::runtime_error {
 public:
  MirrorError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw MirrorError(code, what); }

}  // namespace mirror
