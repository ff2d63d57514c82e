#pragma once

#include <stdexcept>
#include <string>

namespace gevrey {

// Stable error codes surfaced through the CLI error envelope.
enum class Errc {
  EmptySeries,
  HorizonExceeded,
  SyntaxError,
  NonPolynomial,
  IndexOutOfRange,
  AllLeadingZero,
  Unstable,
  DerivativeIdenticallyZero,
  HypothesisViolated,
  Inconsistent,
  NotASolutionPrefix,
  NegativeLeadingExponent,
  Resonance,
  NotApplicable,
  InsufficientTerms,
  ConditionViolated,
  NonPositiveAlpha,
  ZeroDivisor,
  NonPositiveRealPart,
  UnboundedDenominator,
  NotInSemigroup,
  PoleOfGamma,
  TooFewTerms,
  InvalidInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message, std::string context = {})
      : std::runtime_error(std::move(message)), code_(code), context_(std::move(context)) {}

  Errc code() const { return code_; }
  const std::string& context() const { return context_; }

private:
  Errc code_;
  std::string context_;  // free-form detail (offset, exponent, ...), kept machine-readable
};

[[noreturn]] inline void raise(Errc code, std::string message, std::string context = {}) {
  throw Error(code, std::move(message), std::move(context));
}

}  // namespace gevrey
