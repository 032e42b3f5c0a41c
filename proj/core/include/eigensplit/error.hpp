#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eigensplit {

enum class ErrorCode {
  InvalidArgument,
  NotAUnit,
  ZeroResidue,
  RingMismatch,
  NonzeroConstantTerm,
  NonUnitConstantTerm,
  PrecisionExhausted,
  NotReversible,
  NonIntegralCoefficient,
  NotAUnitExponent,
  NotInSubfield,
  NotInBaseField,
  NotOneUnit,
  IndistinguishableFromZero,
  LambdaIsOne,
  NoneFound,
  CongruenceClassMismatch,
  PoleAtZeroCharacter,
  WindowInsufficient,
  KummerVandiverRequired,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace eigensplit
