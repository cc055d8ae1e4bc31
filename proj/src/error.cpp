#include "thermamp/error.hpp"

namespace thermamp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnphysicalRegime: return "UnphysicalRegime";
    case ErrorKind::NearCritical: return "NearCritical";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SubtractionFromVacuum: return "SubtractionFromVacuum";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::CutoffExceeded: return "CutoffExceeded";
    case ErrorKind::TailTooLarge: return "TailTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace thermamp
