#include "fraclap/error.hpp"

namespace fraclap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DuplicateRadius: return "DuplicateRadius";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotInLalpha: return "NotInLalpha";
    case ErrorKind::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DivergentTail: return "DivergentTail";
    case ErrorKind::XOutsideBall: return "XOutsideBall";
    case ErrorKind::NonPositiveValues: return "NonPositiveValues";
    case ErrorKind::BumpInvalid: return "BumpInvalid";
    case ErrorKind::PQNotSupercritical: return "PQNotSupercritical";
    case ErrorKind::NotSubcritical: return "NotSubcritical";
    case ErrorKind::DivergentConvolution: return "DivergentConvolution";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {
std::string compose(ErrorKind kind, const std::string& field, const std::string& message) {
  std::string out(to_string(kind));
  if (!field.empty()) out += "(" + field + ")";
  if (!message.empty()) out += ": " + message;
  return out;
}
}  // namespace

Error::Error(ErrorKind kind, std::string field, const std::string& message)
    : std::runtime_error(compose(kind, field, message)), kind_(kind), field_(std::move(field)) {}

void fail(ErrorKind kind, std::string field, const std::string& message) {
  throw Error(kind, std::move(field), message);
}

}  // namespace fraclap
