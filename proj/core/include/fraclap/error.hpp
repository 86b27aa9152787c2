#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fraclap {

enum class ErrorKind {
  OutOfRange,
  EmptyInput,
  DuplicateRadius,
  NonFiniteValue,
  NoConvergence,
  NotInLalpha,
  ResolutionTooCoarse,
  Singular,
  DivergentTail,
  XOutsideBall,
  NonPositiveValues,
  BumpInvalid,
  PQNotSupercritical,
  NotSubcritical,
  DivergentConvolution,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library is reported through this type. `field()` names
// the offending input when there is one (e.g. "alpha" for a parameter range
// violation), otherwise it is empty.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string field, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

[[noreturn]] void fail(ErrorKind kind, std::string field, const std::string& message);

}  // namespace fraclap
