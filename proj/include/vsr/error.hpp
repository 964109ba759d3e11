#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vsr {

enum class ErrorKind {
  NormalizationViolation,
  NegativeLfc,
  FilmTooThick,
  InvalidInput,
  TraceViolation,
  PositivityViolation,
  StepSizeUnderflow,
  InvariantDrift,
  DomainViolation,
  NoInversion,
  NoPulse,
  PhaseUnwrapFailure,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for errors caused by bad inputs (as opposed to a failed run).
bool is_validation_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vsr
