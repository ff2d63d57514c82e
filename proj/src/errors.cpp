#include "gevrey/errors.hpp"

namespace gevrey {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::HorizonExceeded: return "HorizonExceeded";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::NonPolynomial: return "NonPolynomial";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::AllLeadingZero: return "AllLeadingZero";
    case Errc::Unstable: return "Unstable";
    case Errc::DerivativeIdenticallyZero: return "DerivativeIdenticallyZero";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::NotASolutionPrefix: return "NotASolutionPrefix";
    case Errc::NegativeLeadingExponent: return "NegativeLeadingExponent";
    case Errc::Resonance: return "Resonance";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::InsufficientTerms: return "InsufficientTerms";
    case Errc::ConditionViolated: return "ConditionViolated";
    case Errc::NonPositiveAlpha: return "NonPositiveAlpha";
    case Errc::ZeroDivisor: return "ZeroDivisor";
    case Errc::NonPositiveRealPart: return "NonPositiveRealPart";
    case Errc::UnboundedDenominator: return "UnboundedDenominator";
    case Errc::NotInSemigroup: return "NotInSemigroup";
    case Errc::PoleOfGamma: return "PoleOfGamma";
    case Errc::TooFewTerms: return "TooFewTerms";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace gevrey
