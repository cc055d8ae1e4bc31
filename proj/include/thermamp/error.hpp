#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thermamp {

enum class ErrorKind {
  UnphysicalRegime,
  NearCritical,
  DomainError,
  SubtractionFromVacuum,
  Overflow,
  CutoffExceeded,
  TailTooLarge,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported as an Error carrying its kind, so callers
/// (the CLI in particular) can map it to an exit code without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace thermamp
