#pragma once

#include <stdexcept>
#include <string>

namespace pcf {

// Every failure the library reports derives from Error and carries a kind,
// which the command-line front end maps onto its exit-code table.
enum class ErrorKind {
  NotDivisible,
  DegreeCapExceeded,
  FactorizationStructureViolated,
  PrecisionExhausted,
  NonSquarefreeInput,
  HypothesisViolated,
  KernelSingular,
  InvalidArgument,
  ZeroResultant,
  CacheError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::FactorizationStructureViolated: return "FactorizationStructureViolated";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::NonSquarefreeInput: return "NonSquarefreeInput";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::KernelSingular: return "KernelSingular";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroResultant: return "ZeroResultant";
    case ErrorKind::CacheError: return "CacheError";
  }
  return "Unknown";
}

}  // namespace pcf
