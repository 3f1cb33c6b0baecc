#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "dirac/barriers.hpp"

namespace dirac {

struct PoleResult {
  Complex energy;
  double residual_norm = 0.0;
  int iterations = 0;
  Complex seed;
};

struct SearchBox {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;

  bool contains(Complex z) const;
};

struct PoleSearchOptions {
  int grid_re = 60;
  int grid_im = 40;
  int max_iterations = 100;
  double accept_residual = 1e-9;
  double dedup_radius = 1e-6;
};

struct PoleSearchResult {
  std::vector<PoleResult> poles;
  int seeds = 0;
  int not_converged = 0;
  int outside_box = 0;
  int duplicates = 0;
};

using Residual = std::function<Complex(Complex)>;

/// Product of the fold denominators 1 - R'_acc r_next. For two scatterers this
/// is 1 - r1' r2; a single scatterer (or none) gives exactly 1.
Complex pole_residual(const BarrierChain& chain, Complex energy);

/// Left-hand side of the closed-form resonance condition for two squares:
/// den2 * den1 + 4 (1 - g^2) sin(pa) (1 - d^2) sin(qb) exp(2ik(d - a)).
/// Same zeros as pole_residual on the corresponding chain.
Complex double_square_resonance_lhs(const SquareBarrier& first, const SquareBarrier& second,
                                    const WaveContext& ctx);

/// Damped Newton from `seed`; the derivative is a central difference with
/// step 1e-7 (1 + |E|). `converged` reflects residual_norm < accept.
struct NewtonOutcome {
  PoleResult pole;
  bool converged = false;
};
NewtonOutcome refine_root(const Residual& residual, Complex seed, int max_iterations = 100,
                          double accept_residual = 1e-9);

/// Lattice scan of |residual| followed by Newton from every lattice minimum.
PoleSearchResult find_roots(const Residual& residual, const SearchBox& box,
                            const PoleSearchOptions& options = {});

PoleSearchResult find_poles(const BarrierChain& chain, const SearchBox& box,
                            const PoleSearchOptions& options = {});

double default_delay_step(double energy);

/// Wigner delay d(arg t)/dE by central difference. Throws ZeroTransmission if
/// |t| < 1e-12 at any stencil point and StepTooLarge if the phase turns by
/// more than pi/2 across the stencil.
double wigner_delay(const BarrierChain& chain, double energy, double step);
double wigner_delay(const BarrierChain& chain, double energy);

struct SpectrumRecord {
  double energy = 0.0;
  double transmission = std::numeric_limits<double>::quiet_NaN();
  double reflection = std::numeric_limits<double>::quiet_NaN();
  double phase = std::numeric_limits<double>::quiet_NaN();
  double delay = std::numeric_limits<double>::quiet_NaN();
};

/// n uniformly spaced samples on [e_min, e_max]. The phase column is
/// unwrapped along the sweep; failed points carry NaN instead of aborting.
std::vector<SpectrumRecord> sweep(const BarrierChain& chain, double e_min, double e_max, int n);

/// Energies of strict interior local maxima of the delay column.
std::vector<double> delay_peaks(const std::vector<SpectrumRecord>& records);

/// Same for the transmission column.
std::vector<double> transmission_peaks(const std::vector<SpectrumRecord>& records);

struct OracleOptions {
  double x_min = 0.0;
  double x_max = 0.0;
  int steps = 200000;
};

/// Direct RK4 integration of the Dirac equation through the chain's profile,
/// converted to a scattering matrix in the same basis as square_smatrix.
/// Square edges and cusp centres are step boundaries.
ScatterMatrix integrate_dirac_oracle(const BarrierChain& chain, double energy,
                                     const OracleOptions& options);

/// Domain covering every square and 40 screening lengths past the outermost
/// cusps.
OracleOptions default_oracle_domain(const BarrierChain& chain);

}  // namespace dirac
