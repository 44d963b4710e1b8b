#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace turan {

enum class ErrorKind {
  SizeMismatch,
  IsolatedVertexInH,
  MaxDegreeExceeded,
  TooManyMissingEdges,
  InvalidConfig,
  InvalidGraph,
  NotABijection,
  InstanceTooLarge,
  ParameterOutOfRange,
  VertexOutOfRange,
  UnknownModelSpec,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Rejected input or parameter. Guarantee violations inside the packing
/// engine are not errors; they are reported through PackingOutcome.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace turan
