#pragma once

namespace nonexch {

/// Standard normal distribution function Phi(x).
///
/// Self-contained so that results do not depend on the platform's erf/erfc.
/// Uses the Taylor expansion Phi(x) = 1/2 + phi(x) * sum_k x^(2k+1)/(2k+1)!!
/// for |x| <= 8 and the Laplace continued fraction for the tail beyond.
/// Absolute error below 1e-14 on [-8, 8] (checked against 40-digit
/// reference values in the unit tests).
double norm_cdf(double x);

/// Standard normal density.
double norm_pdf(double x);

/// Quantile function Phi^{-1}(p) for p in [0, 1]; returns -inf/+inf at the
/// endpoints. Bracketed Newton iteration on norm_cdf from an asymptotic
/// starting point; absolute error below 1e-12 wherever |result| <= 8.
double norm_quantile(double p);

}  // namespace nonexch
