#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

enum class ErrorKind {
  SyntaxError,
  DomainError,
  NotIrreducible,
  ZeroPolynomial,
  UnsupportedField,
  DegreeTooLarge,
  NotLinearizable,
  DimensionMismatch,
  PreconditionFailed,
  NonSquare,
  NotRuConjugate,
  EnumerationBudgetExceeded,
  NonUniqueMinimal,
  BasisMismatch,
  InvalidConvention,
  NonClosedSupport,
  ReplayMismatch,
  InternalError,
};

const char* error_kind_name(ErrorKind k);

// Every library failure is reported through this one type; the kind is
// what the CLI serializes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace ccc
