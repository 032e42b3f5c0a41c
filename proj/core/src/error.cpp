#include "eigensplit/error.hpp"

namespace eigensplit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotReversible: return "NotReversible";
    case ErrorCode::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorCode::NotAUnitExponent: return "NotAUnitExponent";
    case ErrorCode::NotInSubfield: return "NotInSubfield";
    case ErrorCode::NotInBaseField: return "NotInBaseField";
    case ErrorCode::NotOneUnit: return "NotOneUnit";
    case ErrorCode::IndistinguishableFromZero: return "IndistinguishableFromZero";
    case ErrorCode::LambdaIsOne: return "LambdaIsOne";
    case ErrorCode::NoneFound: return "NoneFound";
    case ErrorCode::CongruenceClassMismatch: return "CongruenceClassMismatch";
    case ErrorCode::PoleAtZeroCharacter: return "PoleAtZeroCharacter";
    case ErrorCode::WindowInsufficient: return "WindowInsufficient";
    case ErrorCode::KummerVandiverRequired: return "KummerVandiverRequired";
  }
  return "Unknown";
}

}  // namespace eigensplit
