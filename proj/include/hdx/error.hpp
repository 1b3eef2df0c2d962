#ifndef HDX_ERROR_HPP
#define HDX_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdx {

enum class ErrorCode {
  DuplicateFacet,
  ArityMismatch,
  ZeroWeight,
  EmptyComplex,
  UnknownVertex,
  NotPure,
  FaceNotInComplex,
  LevelOutOfRange,
  SupportViolation,
  DomainMismatch,
  SideOutOfRange,
  NotAPermutation,
  OverlappingColorSets,
  FaceTooLarge,
  ZeroMassState,
  MeasureMismatch,
  InstanceTooLarge,
  ZeroGap,
  NoProperColoring,
  TooLarge,
  EmptySide,
  GenerationFailed,
  BudgetExceeded,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hdx

#endif  // HDX_ERROR_HPP
