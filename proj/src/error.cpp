#include "turan/error.hpp"

namespace turan {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::IsolatedVertexInH: return "IsolatedVertexInH";
    case ErrorKind::MaxDegreeExceeded: return "MaxDegreeExceeded";
    case ErrorKind::TooManyMissingEdges: return "TooManyMissingEdges";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::NotABijection: return "NotABijection";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::UnknownModelSpec: return "UnknownModelSpec";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace turan
