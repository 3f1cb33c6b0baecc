#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "dirac/analysis.hpp"
#include "dirac/error.hpp"

namespace dirac {
namespace {

using Vec2 = std::array<Complex, 2>;
using Mat2 = std::array<std::array<Complex, 2>, 2>;

constexpr double kTailTolerance = 1e-10;
constexpr double kCuspDomainLengths = 40.0;
constexpr double kSquarePadding = 1.0;

Mat2 multiply(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Mat2 inverse(const Mat2& a) {
  const Complex det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  return {{{a[1][1] / det, -a[0][1] / det}, {-a[1][0] / det, a[0][0] / det}}};
}

// Plane-wave columns (1, ik/(E-m)) e^{ikx} and (1, -ik/(E-m)) e^{-ikx}.
Mat2 plane_wave_basis(const WaveContext& ctx, double x) {
  const Complex c = Complex{0.0, 1.0} * ctx.k / (ctx.energy - ctx.mass);
  const Complex forward = std::exp(Complex{0.0, 1.0} * ctx.k * x);
  const Complex backward = std::exp(Complex{0.0, -1.0} * ctx.k * x);
  return {{{forward, backward}, {c * forward, -c * backward}}};
}

struct Segment {
  double begin;
  double end;
  int steps;
};

std::vector<Segment> segments(const BarrierChain& chain, const OracleOptions& options) {
  std::vector<double> cuts = {options.x_min, options.x_max};
  for (const BarrierSpec& barrier : chain.barriers()) {
    if (const auto* sq = std::get_if<SquareBarrier>(&barrier)) {
      cuts.push_back(sq->offset);
      cuts.push_back(sq->offset + sq->width);
    } else if (const auto* cusp = std::get_if<CuspBarrier>(&barrier)) {
      cuts.push_back(cusp->center);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double length = options.x_max - options.x_min;
  std::vector<Segment> out;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double a = cuts[i - 1], b = cuts[i];
    if (a < options.x_min || b > options.x_max || b <= a) continue;
    const int n = std::max(1, static_cast<int>(std::lround(options.steps * (b - a) / length)));
    out.push_back({a, b, n});
  }
  return out;
}

// Potential inside one segment; square membership is decided by the midpoint
// so that RK4 stages on an edge see the segment's own value.
double segment_potential(const BarrierChain& chain, double x, double midpoint) {
  double v = 0.0;
  for (const BarrierSpec& barrier : chain.barriers()) {
    if (const auto* sq = std::get_if<SquareBarrier>(&barrier)) {
      if (midpoint > sq->offset && midpoint < sq->offset + sq->width) v += sq->height;
    } else if (const auto* cusp = std::get_if<CuspBarrier>(&barrier)) {
      v += cusp->height * std::exp(-std::abs(x - cusp->center) / cusp->screening);
    }
  }
  return v;
}

void check_profile(const BarrierChain& chain, const OracleOptions& options) {
  if (!(options.x_min < options.x_max)) {
    throw Error(ErrorCode::InvalidArgument, "oracle domain must have x_min < x_max");
  }
  if (options.steps < 10000) {
    throw Error(ErrorCode::InvalidArgument, "oracle needs at least 1e4 steps");
  }
  if (chain.has_delta()) {
    throw Error(ErrorCode::OracleUnsupported, "oracle unsupported for delta barriers");
  }
  double v_max = 0.0;
  for (const BarrierSpec& barrier : chain.barriers()) {
    if (const auto* sq = std::get_if<SquareBarrier>(&barrier)) v_max = std::max(v_max, std::abs(sq->height));
    if (const auto* c = std::get_if<CuspBarrier>(&barrier)) v_max = std::max(v_max, std::abs(c->height));
  }
  for (const BarrierSpec& barrier : chain.barriers()) {
    if (const auto* sq = std::get_if<SquareBarrier>(&barrier)) {
      if (sq->height != 0.0 && (sq->offset < options.x_min || sq->offset + sq->width > options.x_max)) {
        throw Error(ErrorCode::ProfileNotCompact, "square barrier extends past the oracle domain");
      }
    } else if (const auto* c = std::get_if<CuspBarrier>(&barrier)) {
      for (const double edge : {options.x_min, options.x_max}) {
        const double tail = std::abs(c->height) * std::exp(-std::abs(edge - c->center) / c->screening);
        if (tail > kTailTolerance * v_max) {
          std::ostringstream msg;
          msg << "cusp tail " << tail << " at x = " << edge << " exceeds 1e-10 of the peak";
          throw Error(ErrorCode::ProfileNotCompact, msg.str());
        }
      }
    }
  }
}

}  // namespace

OracleOptions default_oracle_domain(const BarrierChain& chain) {
  if (chain.empty()) return {-1.0, 1.0, 200000};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const BarrierSpec& barrier : chain.barriers()) {
    if (const auto* sq = std::get_if<SquareBarrier>(&barrier)) {
      lo = std::min(lo, sq->offset - kSquarePadding);
      hi = std::max(hi, sq->offset + sq->width + kSquarePadding);
    } else if (const auto* c = std::get_if<CuspBarrier>(&barrier)) {
      lo = std::min(lo, c->center - kCuspDomainLengths * c->screening);
      hi = std::max(hi, c->center + kCuspDomainLengths * c->screening);
    } else {
      const double x = barrier_position(barrier);
      lo = std::min(lo, x - kSquarePadding);
      hi = std::max(hi, x + kSquarePadding);
    }
  }
  return {lo, hi, 200000};
}

ScatterMatrix integrate_dirac_oracle(const BarrierChain& chain, double energy,
                                     const OracleOptions& options) {
  check_profile(chain, options);
  const WaveContext ctx = WaveContext::at(energy, chain.mass());
  if (ctx.k == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::ThresholdSingular, "oracle needs E != m");
  }
  const double m = chain.mass();

  // u' = (E - V - m) w,  w' = -(E - V + m) u; columns are two independent
  // solutions started from the identity at x_min.
  Mat2 propagator = {{{1.0, 0.0}, {0.0, 1.0}}};
  for (const Segment& seg : segments(chain, options)) {
    const double h = (seg.end - seg.begin) / seg.steps;
    const double midpoint = 0.5 * (seg.begin + seg.end);
    auto rhs = [&](double x, const Vec2& y) -> Vec2 {
      const double v = segment_potential(chain, x, midpoint);
      return {(energy - v - m) * y[1], -(energy - v + m) * y[0]};
    };
    for (int col = 0; col < 2; ++col) {
      Vec2 y = {propagator[0][col], propagator[1][col]};
      for (int s = 0; s < seg.steps; ++s) {
        const double x = seg.begin + s * h;
        const Vec2 k1 = rhs(x, y);
        const Vec2 k2 = rhs(x + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
        const Vec2 k3 = rhs(x + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
        const Vec2 k4 = rhs(x + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
        for (int c = 0; c < 2; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
      }
      propagator[0][col] = y[0];
      propagator[1][col] = y[1];
    }
  }

  // (C, D) = M (A, B) between the plane-wave amplitudes at the two ends.
  const Mat2 transfer = multiply(inverse(plane_wave_basis(ctx, options.x_max)),
                                 multiply(propagator, plane_wave_basis(ctx, options.x_min)));
  const Complex m00 = transfer[0][0], m01 = transfer[0][1];
  const Complex m10 = transfer[1][0], m11 = transfer[1][1];
  ScatterMatrix s;
  s.r = -m10 / m11;
  s.t_prime = 1.0 / m11;
  s.t = m00 - m01 * m10 / m11;
  s.r_prime = m01 / m11;
  return s;
}

}  // namespace dirac
