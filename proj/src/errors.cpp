#include "sentinel/errors.hpp"

#include <utility>

namespace sentinel {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::SingularKernel: return "SingularKernel";
    case ErrorKind::NotReducible: return "NotReducible";
    case ErrorKind::NoLeftInverse: return "NoLeftInverse";
    case ErrorKind::ZeroBehavior: return "ZeroBehavior";
    case ErrorKind::NotObservable: return "NotObservable";
    case ErrorKind::NotMaximallySecure: return "NotMaximallySecure";
    case ErrorKind::InconsistentIndex: return "InconsistentIndex";
    case ErrorKind::HorizonTooShort: return "HorizonTooShort";
    case ErrorKind::MajorityTie: return "MajorityTie";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> subset,
             std::vector<std::size_t> tally)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      subset_(std::move(subset)),
      tally_(std::move(tally)) {}

}  // namespace sentinel
