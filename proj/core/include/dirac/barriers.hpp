#pragma once

#include <string>
#include <variant>
#include <vector>

#include "dirac/smatrix.hpp"

namespace dirac {

/// Constant potential `height` on [offset, offset + width].
struct SquareBarrier {
  double height = 0.0;
  double width = 1.0;
  double offset = 0.0;
};

/// Screened spike height * exp(-|x - center| / screening).
struct CuspBarrier {
  double height = 0.0;
  double screening = 1.0;
  double center = 0.0;
};

/// Zero-width limit of a square barrier with height * width -> strength.
struct DeltaBarrier {
  double strength = 0.0;
  double position = 0.0;
};

using BarrierSpec = std::variant<SquareBarrier, CuspBarrier, DeltaBarrier>;

/// Left edge (square), center (cusp) or position (delta).
double barrier_position(const BarrierSpec& barrier);

/// Immutable, validated left-to-right sequence of scatterers.
class BarrierChain {
 public:
  /// Cusps closer than this many screening lengths to a neighbour get a warning.
  static constexpr double kCuspSeparationFactor = 10.0;

  BarrierChain(double mass, std::vector<BarrierSpec> barriers);

  double mass() const noexcept { return mass_; }
  const std::vector<BarrierSpec>& barriers() const noexcept { return barriers_; }
  bool empty() const noexcept { return barriers_.empty(); }
  std::size_t size() const noexcept { return barriers_.size(); }
  bool has_delta() const noexcept;

  /// Non-fatal geometry remarks, e.g. cusps too close for composition to be
  /// accurate.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  double mass_;
  std::vector<BarrierSpec> barriers_;
  std::vector<std::string> warnings_;
};

ScatterMatrix square_smatrix(const SquareBarrier& barrier, const WaveContext& ctx);
ScatterMatrix cusp_smatrix(const CuspBarrier& barrier, const WaveContext& ctx);
ScatterMatrix delta_smatrix(const DeltaBarrier& barrier, const WaveContext& ctx);

ScatterMatrix barrier_smatrix(const BarrierSpec& barrier, const WaveContext& ctx);

/// Left fold of compose over the chain, identity for an empty chain.
ScatterMatrix chain_smatrix(const BarrierChain& chain, Complex energy);

/// Energies E_n = V - sqrt(n^2 pi^2 / a^2 + m^2), n >= 1, with E_n > m,
/// ascending. At these energies sin(pa) = 0 and the square is reflectionless.
std::vector<double> square_transmission_resonances(double height, double width, double mass);

/// Cusp height in [lo, hi] for which a single cusp is reflectionless at
/// `energy`. Throws NoResonanceInBracket if |t|^2 = 1 is not reached inside.
double cusp_resonant_strength(double energy, double screening, double mass, double lo, double hi);

/// Pointwise potential. Delta barriers contribute nothing.
double potential_profile(const BarrierChain& chain, double x);

}  // namespace dirac
