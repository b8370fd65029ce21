#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moritoric {

enum class ErrorKind {
  ZeroVector,
  DependentGenerators,
  InvalidFan,
  NotComplete,
  NonSimplicialCone,
  NonSimplicialWall,
  NotQCartier,
  NotCartier,
  NotARefinement,
  BadBoundary,
  NotFanoRhoOne,
  NotExtremal,
  BadConfiguration,
  GenericityFailure,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// command-line front end can map it to a diagnostic without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DependentGenerators: return "DependentGenerators";
    case ErrorKind::InvalidFan: return "InvalidFan";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NonSimplicialCone: return "NonSimplicialCone";
    case ErrorKind::NonSimplicialWall: return "NonSimplicialWall";
    case ErrorKind::NotQCartier: return "NotQCartier";
    case ErrorKind::NotCartier: return "NotCartier";
    case ErrorKind::NotARefinement: return "NotARefinement";
    case ErrorKind::BadBoundary: return "BadBoundary";
    case ErrorKind::NotFanoRhoOne: return "NotFanoRhoOne";
    case ErrorKind::NotExtremal: return "NotExtremal";
    case ErrorKind::BadConfiguration: return "BadConfiguration";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace moritoric
