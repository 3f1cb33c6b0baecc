#include "dirac/smatrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "dirac/error.hpp"

namespace dirac {

WaveContext WaveContext::at(Complex energy, double mass) {
  return {energy, mass, std::sqrt(energy * energy - mass * mass)};
}

ScatterMatrix compose(const ScatterMatrix& s1, const ScatterMatrix& s2) {
  const Complex denominator = 1.0 - s1.r_prime * s2.r;
  if (std::abs(denominator) <= smatrix::kPoleTolerance) {
    std::ostringstream msg;
    msg << "composition denominator |1 - r1' r2| = " << std::abs(denominator);
    throw Error(ErrorCode::OnPole, msg.str());
  }
  ScatterMatrix out;
  out.r = s1.r + s1.t_prime * s2.r * s1.t / denominator;
  out.t_prime = s1.t_prime * s2.t_prime / denominator;
  out.t = s2.t * s1.t / denominator;
  out.r_prime = s2.r_prime + s2.t * s1.r_prime * s2.t_prime / denominator;
  return out;
}

ScatterMatrix translate(const ScatterMatrix& s, double shift, Complex k) {
  if (shift == 0.0) return s;
  const Complex phase_in = std::exp(Complex{0.0, 2.0} * k * shift);
  const Complex phase_out = std::exp(Complex{0.0, -2.0} * k * shift);
  return {s.r * phase_in, s.t, s.r_prime * phase_out, s.t_prime};
}

double transmission(const ScatterMatrix& s) { return std::norm(s.t); }

double reflection(const ScatterMatrix& s) { return std::norm(s.r); }

double phase(const ScatterMatrix& s) {
  if (s.t == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::ZeroTransmission, "phase of a vanishing transmission amplitude");
  }
  return std::arg(s.t);
}

double unitarity_defect(const ScatterMatrix& s) {
  // Columns of S = [[r, t'], [t, r']].
  const Complex s00 = s.r, s01 = s.t_prime, s10 = s.t, s11 = s.r_prime;
  const std::array<Complex, 4> g = {
      std::conj(s00) * s00 + std::conj(s10) * s10 - 1.0,
      std::conj(s00) * s01 + std::conj(s10) * s11,
      std::conj(s01) * s00 + std::conj(s11) * s10,
      std::conj(s01) * s01 + std::conj(s11) * s11 - 1.0,
  };
  double worst = 0.0;
  for (const Complex& entry : g) worst = std::max(worst, std::abs(entry));
  return worst;
}

double max_deviation(const ScatterMatrix& a, const ScatterMatrix& b) {
  return std::max({std::abs(a.r - b.r), std::abs(a.t - b.t), std::abs(a.r_prime - b.r_prime),
                   std::abs(a.t_prime - b.t_prime)});
}

}  // namespace dirac
