#pragma once

#include "gevrey/bigfloat.hpp"
#include "gevrey/rational.hpp"

namespace gevrey {

// Exact Bernoulli number B_n (B_1 = -1/2). Cached, thread-safe.
Rational bernoulli(unsigned n);

// Principal branch of log Gamma(w) at the precision carried by w, computed by
// shifting the argument until Stirling's series with Bernoulli corrections
// converges at that precision. Poles (w a nonpositive real integer) raise
// PoleOfGamma.
BigComplex log_gamma(const BigComplex& w);

// |Gamma(w)| = exp(Re log Gamma(w)).
BigFloat gamma_abs(const BigComplex& w);

}  // namespace gevrey
