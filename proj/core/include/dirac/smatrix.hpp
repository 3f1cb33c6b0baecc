#pragma once

#include <complex>

#include "dirac/specfun.hpp"

namespace dirac {

/// Two-port scattering matrix in the global frame.
///
/// Outgoing amplitudes follow B = r A + t' D and C = t A + r' D, where A, D
/// are waves incident from the left and right and B, C the reflected and
/// transmitted ones. Plane waves are exp(+-ikx) referenced to x = 0.
struct ScatterMatrix {
  Complex r{0.0, 0.0};
  Complex t{1.0, 0.0};
  Complex r_prime{0.0, 0.0};
  Complex t_prime{1.0, 0.0};

  static constexpr ScatterMatrix identity() { return {}; }
};

/// Kinematics of the free region: total energy, mass and k = sqrt(E^2 - m^2)
/// on the principal branch.
struct WaveContext {
  Complex energy;
  double mass = 1.0;
  Complex k;

  static WaveContext at(Complex energy, double mass);
};

namespace smatrix {
inline constexpr double kPoleTolerance = 1e-14;
}

/// Series composition of s1 (left) followed by s2 (right). Throws OnPole when
/// |1 - r1' r2| <= 1e-14.
ScatterMatrix compose(const ScatterMatrix& s1, const ScatterMatrix& s2);

/// Moves a scatterer by `shift` along x.
ScatterMatrix translate(const ScatterMatrix& s, double shift, Complex k);

double transmission(const ScatterMatrix& s);
double reflection(const ScatterMatrix& s);

/// arg t in (-pi, pi]. Throws ZeroTransmission if t == 0.
double phase(const ScatterMatrix& s);

/// max |(S^dagger S - I)_ij| for S = [[r, t'], [t, r']].
double unitarity_defect(const ScatterMatrix& s);

/// Largest componentwise modulus of a - b.
double max_deviation(const ScatterMatrix& a, const ScatterMatrix& b);

}  // namespace dirac
