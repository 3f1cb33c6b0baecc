#include "dirac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dirac/error.hpp"

namespace dirac {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// compose() without the pole guard, for residual evaluation near poles.
ScatterMatrix fold_step(const ScatterMatrix& s1, const ScatterMatrix& s2, Complex denominator) {
  return {s1.r + s1.t_prime * s2.r * s1.t / denominator, s2.t * s1.t / denominator,
          s2.r_prime + s2.t * s1.r_prime * s2.t_prime / denominator,
          s1.t_prime * s2.t_prime / denominator};
}

double safe_abs(const Residual& residual, Complex z) {
  try {
    const double v = std::abs(residual(z));
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

bool SearchBox::contains(Complex z) const {
  return z.real() > re_min && z.real() < re_max && z.imag() > im_min && z.imag() < im_max;
}

Complex pole_residual(const BarrierChain& chain, Complex energy) {
  if (chain.size() < 2) return {1.0, 0.0};
  const WaveContext ctx = WaveContext::at(energy, chain.mass());
  const auto& barriers = chain.barriers();
  ScatterMatrix acc = barrier_smatrix(barriers.front(), ctx);
  Complex product{1.0, 0.0};
  for (std::size_t i = 1; i < barriers.size(); ++i) {
    const ScatterMatrix next = barrier_smatrix(barriers[i], ctx);
    const Complex local = 1.0 - acc.r_prime * next.r;
    product *= local;
    if (i + 1 < barriers.size()) acc = fold_step(acc, next, local);
  }
  return product;
}

Complex double_square_resonance_lhs(const SquareBarrier& first, const SquareBarrier& second,
                                    const WaveContext& ctx) {
  const Complex e = ctx.energy;
  const double m = ctx.mass;
  const double a = first.width;
  const double b = second.width;
  const double d = second.offset - first.offset;
  const Complex p = std::sqrt((e - first.height) * (e - first.height) - m * m);
  const Complex q = std::sqrt((e - second.height) * (e - second.height) - m * m);
  const Complex g = ctx.k * (e - first.height - m) / (p * (e - m));
  const Complex h = ctx.k * (e - second.height - m) / (q * (e - m));
  const Complex den1 = (1.0 - g) * (1.0 - g) * std::exp(kI * p * a) -
                       (1.0 + g) * (1.0 + g) * std::exp(-kI * p * a);
  const Complex den2 = (1.0 - h) * (1.0 - h) * std::exp(kI * q * b) -
                       (1.0 + h) * (1.0 + h) * std::exp(-kI * q * b);
  return den2 * den1 + 4.0 * (1.0 - g * g) * std::sin(p * a) * (1.0 - h * h) * std::sin(q * b) *
                           std::exp(2.0 * kI * ctx.k * (d - a));
}

NewtonOutcome refine_root(const Residual& residual, Complex seed, int max_iterations,
                          double accept_residual) {
  NewtonOutcome out;
  out.pole.seed = seed;
  Complex z = seed;
  double fz_abs = safe_abs(residual, z);
  if (!std::isfinite(fz_abs)) {
    out.pole.energy = z;
    out.pole.residual_norm = fz_abs;
    return out;
  }
  Complex fz = residual(z);
  int iteration = 0;
  while (iteration < max_iterations) {
    ++iteration;
    const double h = 1e-7 * (1.0 + std::abs(z));
    Complex derivative;
    try {
      derivative = (residual(z + h) - residual(z - h)) / (2.0 * h);
    } catch (const Error&) {
      break;
    }
    if (derivative == Complex{0.0, 0.0} || !std::isfinite(std::abs(derivative))) break;
    const Complex step = fz / derivative;

    // Backtrack until |f| decreases.
    double damping = 1.0;
    bool improved = false;
    Complex candidate;
    double candidate_abs = 0.0;
    for (int tries = 0; tries < 30; ++tries) {
      candidate = z - damping * step;
      candidate_abs = safe_abs(residual, candidate);
      if (candidate_abs < fz_abs) {
        improved = true;
        break;
      }
      damping *= 0.5;
    }
    if (!improved) break;
    const double moved = std::abs(damping * step);
    z = candidate;
    fz = residual(z);
    fz_abs = candidate_abs;
    if (fz_abs == 0.0 || moved < 1e-15 * (1.0 + std::abs(z))) break;
  }
  out.pole.energy = z;
  out.pole.residual_norm = fz_abs;
  out.pole.iterations = iteration;
  out.converged = fz_abs < accept_residual;
  return out;
}

PoleSearchResult find_roots(const Residual& residual, const SearchBox& box,
                            const PoleSearchOptions& options) {
  if (!(box.re_min < box.re_max) || !(box.im_min < box.im_max)) {
    throw Error(ErrorCode::InvalidArgument, "search box must have re_min < re_max, im_min < im_max");
  }
  if (options.grid_re < 1 || options.grid_im < 1) {
    throw Error(ErrorCode::InvalidArgument, "search lattice must be non-empty");
  }
  const int nr = options.grid_re;
  const int ni = options.grid_im;
  const double dre = (box.re_max - box.re_min) / nr;
  const double dim = (box.im_max - box.im_min) / ni;
  auto node = [&](int i, int j) {
    return Complex{box.re_min + (i + 0.5) * dre, box.im_min + (j + 0.5) * dim};
  };

  std::vector<double> modulus(static_cast<std::size_t>(nr) * ni);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < ni; ++j) modulus[i * ni + j] = safe_abs(residual, node(i, j));
  }

  PoleSearchResult result;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < ni; ++j) {
      const double v = modulus[i * ni + j];
      if (!std::isfinite(v)) continue;
      bool minimum = true;
      for (int di = -1; di <= 1 && minimum; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || ii >= nr || jj < 0 || jj >= ni) continue;
          if (!(v < modulus[ii * ni + jj])) {
            minimum = false;
            break;
          }
        }
      }
      if (!minimum) continue;

      ++result.seeds;
      const NewtonOutcome outcome =
          refine_root(residual, node(i, j), options.max_iterations, options.accept_residual);
      if (!outcome.converged) {
        ++result.not_converged;
        continue;
      }
      if (!box.contains(outcome.pole.energy)) {
        ++result.outside_box;
        continue;
      }
      const bool duplicate =
          std::any_of(result.poles.begin(), result.poles.end(), [&](const PoleResult& p) {
            return std::abs(p.energy - outcome.pole.energy) < options.dedup_radius;
          });
      if (duplicate) {
        ++result.duplicates;
        continue;
      }
      result.poles.push_back(outcome.pole);
    }
  }
  std::sort(result.poles.begin(), result.poles.end(),
            [](const PoleResult& a, const PoleResult& b) { return a.energy.real() < b.energy.real(); });
  return result;
}

PoleSearchResult find_poles(const BarrierChain& chain, const SearchBox& box,
                            const PoleSearchOptions& options) {
  if (box.im_max > 0.0) {
    throw Error(ErrorCode::InvalidArgument, "pole search box must lie in Im E <= 0");
  }
  return find_roots([&chain](Complex e) { return pole_residual(chain, e); }, box, options);
}

double default_delay_step(double energy) { return 1e-5 * std::max(1.0, std::abs(energy)); }

double wigner_delay(const BarrierChain& chain, double energy, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "delay step must be positive");
  if (!(energy - step > chain.mass())) {
    throw Error(ErrorCode::InvalidArgument, "delay stencil reaches below the mass threshold");
  }
  const Complex below = chain_smatrix(chain, energy - step).t;
  const Complex centre = chain_smatrix(chain, energy).t;
  const Complex above = chain_smatrix(chain, energy + step).t;
  for (const Complex t : {below, centre, above}) {
    if (std::abs(t) < 1e-12) {
      std::ostringstream msg;
      msg << "|t| < 1e-12 near E = " << energy;
      throw Error(ErrorCode::ZeroTransmission, msg.str());
    }
  }
  const double turn = std::arg(centre / below) + std::arg(above / centre);
  if (std::abs(turn) > std::numbers::pi / 2.0) {
    std::ostringstream msg;
    msg << "phase turns by " << turn << " across 2h = " << 2.0 * step << " at E = " << energy;
    throw Error(ErrorCode::StepTooLarge, msg.str());
  }
  return turn / (2.0 * step);
}

double wigner_delay(const BarrierChain& chain, double energy) {
  return wigner_delay(chain, energy, default_delay_step(energy));
}

std::vector<SpectrumRecord> sweep(const BarrierChain& chain, double e_min, double e_max, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sweep needs at least two points");
  if (!(e_min > chain.mass()) || !(e_min < e_max)) {
    throw Error(ErrorCode::InvalidArgument, "sweep needs m < e_min < e_max");
  }
  std::vector<SpectrumRecord> records(static_cast<std::size_t>(n));
  bool have_phase = false;
  double last_raw = 0.0;
  double last_unwrapped = 0.0;
  for (int i = 0; i < n; ++i) {
    SpectrumRecord& rec = records[i];
    rec.energy = (i == n - 1) ? e_max : e_min + (e_max - e_min) * i / (n - 1);
    try {
      const ScatterMatrix s = chain_smatrix(chain, rec.energy);
      rec.transmission = transmission(s);
      rec.reflection = reflection(s);
      if (std::abs(s.t) > 0.0) {
        const double raw = std::arg(s.t);
        if (have_phase) {
          double jump = raw - last_raw;
          jump -= kTwoPi * std::round(jump / kTwoPi);
          last_unwrapped += jump;
        } else {
          last_unwrapped = raw;
          have_phase = true;
        }
        last_raw = raw;
        rec.phase = last_unwrapped;
      }
    } catch (const Error&) {
      continue;
    }
    try {
      rec.delay = wigner_delay(chain, rec.energy);
    } catch (const Error&) {
      rec.delay = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return records;
}

namespace {

template <class Column>
std::vector<double> interior_maxima(const std::vector<SpectrumRecord>& records, Column column) {
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const double left = column(records[i - 1]);
    const double mid = column(records[i]);
    const double right = column(records[i + 1]);
    if (!std::isfinite(left) || !std::isfinite(mid) || !std::isfinite(right)) continue;
    if (mid > left && mid > right) peaks.push_back(records[i].energy);
  }
  return peaks;
}

}  // namespace

std::vector<double> delay_peaks(const std::vector<SpectrumRecord>& records) {
  return interior_maxima(records, [](const SpectrumRecord& r) { return r.delay; });
}

std::vector<double> transmission_peaks(const std::vector<SpectrumRecord>& records) {
  return interior_maxima(records, [](const SpectrumRecord& r) { return r.transmission; });
}

}  // namespace dirac
