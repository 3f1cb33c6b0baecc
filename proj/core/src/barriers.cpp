#include "dirac/barriers.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dirac/error.hpp"

namespace dirac {
namespace {

constexpr Complex kI{0.0, 1.0};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string at_energy(Complex energy) {
  std::ostringstream out;
  out.precision(12);
  out << " at E = " << energy.real();
  if (energy.imag() != 0.0) out << (energy.imag() < 0 ? " - " : " + ") << std::abs(energy.imag()) << "i";
  return out.str();
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
  }
}

void require_propagating(const WaveContext& ctx) {
  if (ctx.k == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::ThresholdSingular, "free wavenumber vanishes" + at_energy(ctx.energy));
  }
}

// sin(pa)/p, even in p and finite at p = 0.
Complex sinc_width(Complex p, double width) {
  const Complex x = p * width;
  if (std::abs(x) < 1e-4) {
    const Complex x2 = x * x;
    return width * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
  }
  return std::sin(x) / p;
}

double right_edge(const BarrierSpec& barrier) {
  if (const auto* sq = std::get_if<SquareBarrier>(&barrier)) return sq->offset + sq->width;
  return barrier_position(barrier);
}

}  // namespace

double barrier_position(const BarrierSpec& barrier) {
  return std::visit(Overloaded{
                        [](const SquareBarrier& b) { return b.offset; },
                        [](const CuspBarrier& b) { return b.center; },
                        [](const DeltaBarrier& b) { return b.position; },
                    },
                    barrier);
}

BarrierChain::BarrierChain(double mass, std::vector<BarrierSpec> barriers)
    : mass_(mass), barriers_(std::move(barriers)) {
  if (!std::isfinite(mass_) || mass_ <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "mass must be positive");
  }
  for (const BarrierSpec& barrier : barriers_) {
    std::visit(Overloaded{
                   [](const SquareBarrier& b) {
                     require_finite(b.height, "square height");
                     require_finite(b.offset, "square offset");
                     if (!std::isfinite(b.width) || b.width <= 0.0) {
                       throw Error(ErrorCode::InvalidArgument, "square width must be positive");
                     }
                   },
                   [](const CuspBarrier& b) {
                     require_finite(b.height, "cusp height");
                     require_finite(b.center, "cusp center");
                     if (!std::isfinite(b.screening) || b.screening <= 0.0) {
                       throw Error(ErrorCode::InvalidArgument, "cusp screening must be positive");
                     }
                   },
                   [](const DeltaBarrier& b) {
                     require_finite(b.strength, "delta strength");
                     require_finite(b.position, "delta position");
                   },
               },
               barrier);
  }

  for (std::size_t i = 1; i < barriers_.size(); ++i) {
    const BarrierSpec& left = barriers_[i - 1];
    const BarrierSpec& right = barriers_[i];
    const double start = barrier_position(right);
    if (start < right_edge(left)) {
      std::ostringstream msg;
      msg << "barrier " << i << " starts at x = " << start << ", before barrier " << i - 1
          << " ends at x = " << right_edge(left) << "; barriers must be ordered and disjoint";
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
    double screening = 0.0;
    if (const auto* c = std::get_if<CuspBarrier>(&left)) screening = std::max(screening, c->screening);
    if (const auto* c = std::get_if<CuspBarrier>(&right)) screening = std::max(screening, c->screening);
    if (screening > 0.0 && start - right_edge(left) < kCuspSeparationFactor * screening) {
      std::ostringstream msg;
      msg << "barriers " << i - 1 << " and " << i << " are separated by " << start - right_edge(left)
          << ", less than " << kCuspSeparationFactor
          << " screening lengths; composition is approximate";
      warnings_.push_back(msg.str());
    }
  }
}

bool BarrierChain::has_delta() const noexcept {
  for (const BarrierSpec& barrier : barriers_) {
    if (std::holds_alternative<DeltaBarrier>(barrier)) return true;
  }
  return false;
}

ScatterMatrix square_smatrix(const SquareBarrier& barrier, const WaveContext& ctx) {
  require_propagating(ctx);
  if (barrier.height == 0.0) return ScatterMatrix::identity();

  const Complex energy = ctx.energy;
  const double m = ctx.mass;
  const double a = barrier.width;
  const Complex inner = energy - barrier.height;
  // With eps = E - V - m: p^2 = eps (E - V + m), gamma p = beta eps. The
  // common factor eps is cancelled; the result is even in p.
  const Complex eps = inner - m;
  const Complex upper = inner + m;
  const Complex beta = ctx.k / (energy - m);
  const Complex p = std::sqrt(eps * upper);
  const Complex s = sinc_width(p, a);
  const Complex c = std::cos(p * a);

  const Complex denominator = 2.0 * kI * (upper + beta * beta * eps) * s - 4.0 * beta * c;
  if (denominator == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::OnPole, "square barrier denominator vanishes" + at_energy(energy));
  }
  const Complex r = -2.0 * kI * (upper - beta * beta * eps) * s / denominator;
  const Complex t = -4.0 * beta * std::exp(-kI * ctx.k * a) / denominator;
  const Complex r_prime = r * std::exp(-2.0 * kI * ctx.k * a);
  return translate({r, t, r_prime, t}, barrier.offset, ctx.k);
}

ScatterMatrix delta_smatrix(const DeltaBarrier& barrier, const WaveContext& ctx) {
  require_propagating(ctx);
  if (barrier.strength == 0.0) return ScatterMatrix::identity();

  const double mu = barrier.strength;
  const Complex gamma = -ctx.k / (ctx.energy - ctx.mass);
  const Complex denominator = (1.0 - gamma) * (1.0 - gamma) * std::exp(kI * mu) -
                              (1.0 + gamma) * (1.0 + gamma) * std::exp(-kI * mu);
  if (denominator == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::OnPole, "delta barrier denominator vanishes" + at_energy(ctx.energy));
  }
  const Complex r = -2.0 * kI * (1.0 - gamma * gamma) * std::sin(mu) / denominator;
  const Complex t = -4.0 * gamma / denominator;
  return translate({r, t, r, t}, barrier.position, ctx.k);
}

ScatterMatrix cusp_smatrix(const CuspBarrier& barrier, const WaveContext& ctx) {
  require_propagating(ctx);
  if (ctx.mass <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "cusp scattering requires a positive mass");
  }
  if (barrier.height == 0.0) return ScatterMatrix::identity();

  const Complex energy = ctx.energy;
  const double m = ctx.mass;
  const double a = barrier.screening;
  const double ma = m * a;

  // Whittaker indices; e = 1.
  const Complex k_index = kI * energy * a - 0.5;
  const Complex mu = kI * a * ctx.k;
  const Complex nu{0.0, 2.0 * a * barrier.height};

  for (const Complex lower : {1.0 + 2.0 * mu, 1.0 - 2.0 * mu}) {
    if (std::abs(lower.imag()) < 1e-12 && lower.real() < 1e-12 &&
        std::abs(lower.real() - std::round(lower.real())) < 1e-12) {
      throw Error(ErrorCode::DegenerateIndex,
                  "Whittaker index 1 +- 2mu is a non-positive integer" + at_energy(energy));
    }
  }

  const Complex m_k_plus = whittaker_m(k_index, mu, nu);
  const Complex m_k_minus = whittaker_m(k_index, -mu, nu);
  const Complex m_k1_plus = whittaker_m(k_index + 1.0, mu, nu);
  const Complex m_k1_minus = whittaker_m(k_index + 1.0, -mu, nu);

  // theta / phi = nu^(-2mu) sqrt((E - K) / (E + K)) = nu^(-2mu) m / (E + K).
  const Complex norm_ratio = complex_power(nu, -2.0 * mu) * m / (energy + ctx.k);

  const Complex c_minus = (0.5 + k_index - mu) / ma;
  const Complex c_plus = (0.5 + k_index + mu) / ma;
  const Complex c_cross = ((0.5 + k_index) * (0.5 + k_index) - mu * mu) / (ma * ma);

  const Complex denominator = c_minus * c_minus * m_k1_minus * m_k1_minus + m_k_minus * m_k_minus;
  if (denominator == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::OnPole, "cusp denominator vanishes" + at_energy(energy));
  }
  const Complex r_cusp =
      -norm_ratio * (c_cross * m_k1_plus * m_k1_minus + m_k_plus * m_k_minus) / denominator;
  const Complex t_cusp =
      norm_ratio * (c_plus * m_k_minus * m_k1_plus - c_minus * m_k_plus * m_k1_minus) / denominator;

  // The closed form uses unit spinors of the sigma^2 representation; map to
  // the (1, +-ik/(E-m)) plane-wave basis shared with the square barrier.
  const Complex r = -r_cusp;
  const Complex t = -kI * t_cusp;
  return translate({r, t, r, t}, barrier.center, ctx.k);
}

ScatterMatrix barrier_smatrix(const BarrierSpec& barrier, const WaveContext& ctx) {
  return std::visit(Overloaded{
                        [&](const SquareBarrier& b) { return square_smatrix(b, ctx); },
                        [&](const CuspBarrier& b) { return cusp_smatrix(b, ctx); },
                        [&](const DeltaBarrier& b) { return delta_smatrix(b, ctx); },
                    },
                    barrier);
}

ScatterMatrix chain_smatrix(const BarrierChain& chain, Complex energy) {
  const WaveContext ctx = WaveContext::at(energy, chain.mass());
  ScatterMatrix total = ScatterMatrix::identity();
  try {
    bool first = true;
    for (const BarrierSpec& barrier : chain.barriers()) {
      const ScatterMatrix s = barrier_smatrix(barrier, ctx);
      total = first ? s : compose(total, s);
      first = false;
    }
  } catch (const Error& e) {
    const std::string message = e.what();
    if (message.find(" at E = ") != std::string::npos) throw;
    throw Error(e.code(), message.substr(message.find(": ") + 2) + at_energy(energy));
  }
  return total;
}

std::vector<double> square_transmission_resonances(double height, double width, double mass) {
  if (!(height > 0.0) || !(width > 0.0) || !(mass >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need V > 0, a > 0, m >= 0");
  }
  std::vector<double> energies;
  for (int n = 1;; ++n) {
    const double q = n * std::numbers::pi / width;
    const double e = height - std::sqrt(q * q + mass * mass);
    if (!(e > mass)) break;
    energies.push_back(e);
  }
  // Decreasing in n; report ascending in E.
  std::reverse(energies.begin(), energies.end());
  return energies;
}

double cusp_resonant_strength(double energy, double screening, double mass, double lo, double hi) {
  if (!(energy > mass) || !(screening > 0.0) || !(lo < hi)) {
    throw Error(ErrorCode::InvalidArgument, "need E > m, a > 0 and lo < hi");
  }
  const WaveContext ctx = WaveContext::at(energy, mass);
  auto t2 = [&](double height) {
    return transmission(cusp_smatrix(CuspBarrier{height, screening, 0.0}, ctx));
  };

  constexpr int kScan = 400;
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i <= kScan; ++i) {
    const double v = t2(lo + (hi - lo) * i / kScan);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  std::ostringstream where;
  where << " for E = " << energy << " in [" << lo << ", " << hi << "]";
  if (best == 0 || best == kScan) {
    throw Error(ErrorCode::NoResonanceInBracket,
                "|t|^2 is maximal at the bracket edge" + where.str());
  }

  const double step = (hi - lo) / kScan;
  const double left = lo + step * (best - 1);
  const double right = lo + step * (best + 1);
  const auto [height, neg_t2] = boost::math::tools::brent_find_minima(
      [&](double v) { return -t2(v); }, left, right, std::numeric_limits<double>::digits);
  if (1.0 + neg_t2 > 1e-8) {
    std::ostringstream msg;
    msg << "best |t|^2 = " << -neg_t2 << " at V0 = " << height << where.str();
    throw Error(ErrorCode::NoResonanceInBracket, msg.str());
  }
  return height;
}

double potential_profile(const BarrierChain& chain, double x) {
  double total = 0.0;
  for (const BarrierSpec& barrier : chain.barriers()) {
    total += std::visit(Overloaded{
                            [x](const SquareBarrier& b) {
                              return (x >= b.offset && x < b.offset + b.width) ? b.height : 0.0;
                            },
                            [x](const CuspBarrier& b) {
                              return b.height * std::exp(-std::abs(x - b.center) / b.screening);
                            },
                            [](const DeltaBarrier&) { return 0.0; },
                        },
                        barrier);
  }
  return total;
}

}  // namespace dirac
