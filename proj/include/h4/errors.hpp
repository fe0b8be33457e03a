#pragma once

#include <stdexcept>
#include <string>

namespace h4 {

enum class ErrorKind {
  MixedRadicands,
  PoleAtValue,
  NegativeDiscriminant,
  ZeroLeadingCoefficient,
  NotInQH4,
  InputInQH4,
  Terminated,
  CapExceeded,
  Undecidable,
  DomainError,
  NonPeriodicInput,
  ParseError,
  ValidationError,
  InvariantViolation,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MixedRadicands: return "MixedRadicands";
    case ErrorKind::PoleAtValue: return "PoleAtValue";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::NotInQH4: return "NotInQH4";
    case ErrorKind::InputInQH4: return "InputInQH4";
    case ErrorKind::Terminated: return "Terminated";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::Undecidable: return "Undecidable";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonPeriodicInput: return "NonPeriodicInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Internal consistency check. Failing one means a theorem-level invariant was
// violated, which is always a bug.
inline void ensure(bool cond, const char* what) {
  if (!cond) throw Error(ErrorKind::InvariantViolation, what);
}

}  // namespace h4
