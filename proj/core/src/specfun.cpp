#include "dirac/specfun.hpp"

#include <cmath>
#include <sstream>

#include "dirac/error.hpp"

namespace dirac {
namespace {

constexpr double kIntegerTolerance = 1e-12;

bool is_non_positive_integer(Complex b) {
  if (std::abs(b.imag()) > kIntegerTolerance) return false;
  const double re = b.real();
  if (re > kIntegerTolerance) return false;
  return std::abs(re - std::round(re)) <= kIntegerTolerance;
}

std::string describe(Complex z) {
  std::ostringstream out;
  out.precision(17);
  out << '(' << z.real() << ", " << z.imag() << ')';
  return out.str();
}

}  // namespace

SeriesResult kummer_m(Complex a, Complex b, Complex z) {
  if (is_non_positive_integer(b)) {
    throw Error(ErrorCode::DegenerateParameter,
                "1F1 lower parameter b = " + describe(b) + " is a non-positive integer");
  }

  Complex term{1.0, 0.0};
  Complex sum{1.0, 0.0};
  int quiet = 0;
  for (int n = 0; n < series::kMaxTerms; ++n) {
    const double nd = static_cast<double>(n);
    term *= (a + nd) * z / ((b + nd) * (nd + 1.0));
    sum += term;
    if (term == Complex{0.0, 0.0} ||
        std::abs(term) < series::kRelativeTolerance * std::abs(sum)) {
      if (++quiet == series::kQuietTermsRequired) {
        return {sum, n + 2, true};
      }
    } else {
      quiet = 0;
    }
  }
  throw Error(ErrorCode::NonConvergence, "1F1 series for z = " + describe(z) + " exceeded " +
                                             std::to_string(series::kMaxTerms) + " terms");
}

Complex complex_power(Complex base, Complex exponent) {
  if (base == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::ZeroBase, "complex power of zero");
  }
  // std::log honours the sign of a zero imaginary part; pin Arg(-x) to +pi.
  if (base.imag() == 0.0) base = Complex{base.real(), 0.0};
  return std::exp(exponent * std::log(base));
}

Complex whittaker_m(Complex k, Complex mu, Complex z) {
  if (z.imag() == 0.0 && z.real() < 0.0) {
    throw Error(ErrorCode::BranchDegenerate,
                "Whittaker argument " + describe(z) + " lies on the branch cut");
  }
  const SeriesResult f = kummer_m(0.5 + mu - k, 1.0 + 2.0 * mu, z);
  return std::exp(-0.5 * z) * complex_power(z, mu + 0.5) * f.value;
}

}  // namespace dirac
