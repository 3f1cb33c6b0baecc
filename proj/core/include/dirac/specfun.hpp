#pragma once

#include <complex>

namespace dirac {

using Complex = std::complex<double>;

struct SeriesResult {
  Complex value;
  int terms_used = 0;
  bool converged = false;
};

namespace series {
inline constexpr double kRelativeTolerance = 1e-16;
inline constexpr int kQuietTermsRequired = 3;
inline constexpr int kMaxTerms = 10000;
}  // namespace series

/// Kummer's confluent hypergeometric function 1F1(a; b; z) by direct Taylor
/// summation. Intended for |z| up to a few tens; there is no asymptotic branch.
///
/// Stops once three consecutive terms are below 1e-16 of the partial sum.
/// Throws DegenerateParameter when b is a non-positive integer and
/// NonConvergence when the term cap is exhausted.
SeriesResult kummer_m(Complex a, Complex b, Complex z);

/// Whittaker M_{k,mu}(z) = exp(-z/2) z^(mu+1/2) 1F1(1/2+mu-k; 1+2mu; z),
/// principal branch. z on the closed negative real axis raises
/// BranchDegenerate, z = 0 raises ZeroBase.
Complex whittaker_m(Complex k, Complex mu, Complex z);

/// exp(exponent * Log(base)) with Arg(base) in (-pi, pi].
Complex complex_power(Complex base, Complex exponent);

}  // namespace dirac
