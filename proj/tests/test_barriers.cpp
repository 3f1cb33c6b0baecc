#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "dirac/analysis.hpp"
#include "dirac/barriers.hpp"
#include "dirac/error.hpp"
#include "reference_forms.hpp"

namespace dirac {
namespace {

constexpr double kCuspStrength = 6.4271;

ScatterMatrix square_at(double e, double v = 5.0, double a = 3.0, double offset = 0.0, double m = 1.0) {
  return square_smatrix({v, a, offset}, WaveContext::at(e, m));
}

ScatterMatrix oracle(const BarrierChain& chain, double e, int steps) {
  OracleOptions options = default_oracle_domain(chain);
  options.steps = steps;
  return integrate_dirac_oracle(chain, e, options);
}

TEST(Square, ZeroHeightIsIdentity) {
  EXPECT_LT(max_deviation(square_at(2.0, 0.0), ScatterMatrix::identity()), 1e-15);
}

TEST(Square, ReflectionlessAtSinZero) {
  const double e = 5.0 - std::sqrt(std::numbers::pi * std::numbers::pi + 1.0);
  EXPECT_NEAR(std::abs(square_at(e).t), 1.0, 1e-10);
}

TEST(Square, MatchesLiteralFormOnBothBranches) {
  for (double e : {1.3, 1.70309, 2.5, 3.5, 4.5, 5.5, 7.0, 9.0}) {
    const ScatterMatrix s = square_at(e);
    EXPECT_LT(max_deviation(s, reference::square_at_origin(e, 1.0, 5.0, 3.0, false)), 1e-13) << e;
    EXPECT_LT(max_deviation(s, reference::square_at_origin(e, 1.0, 5.0, 3.0, true)), 1e-13) << e;
  }
}

TEST(SquareProperty, BranchInvariantAtComplexEnergy) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> re(1.05, 9.0);
  std::uniform_real_distribution<double> im(-0.5, 0.0);
  for (int i = 0; i < 100; ++i) {
    const Complex e{re(rng), im(rng)};
    const ScatterMatrix plus = reference::square_at_origin(e, 1.0, 5.0, 3.0, false);
    const ScatterMatrix minus = reference::square_at_origin(e, 1.0, 5.0, 3.0, true);
    EXPECT_LT(max_deviation(plus, minus), 1e-13) << e;
    EXPECT_LT(max_deviation(square_smatrix({5.0, 3.0, 0.0}, WaveContext::at(e, 1.0)), plus), 1e-12) << e;
  }
}

TEST(SquareProperty, ContinuousAcrossThresholds) {
  for (double threshold : {6.0, 4.0}) {
    const ScatterMatrix below = square_at(threshold - 1e-7);
    const ScatterMatrix at = square_at(threshold);
    const ScatterMatrix above = square_at(threshold + 1e-7);
    EXPECT_LT(max_deviation(below, above), 1e-4) << threshold;
    EXPECT_LT(max_deviation(below, at), 1e-4) << threshold;
  }
}

TEST(SquareProperty, FluxConservedInKleinZone) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> energy(1.05, 8.9);
  std::uniform_real_distribution<double> width(0.2, 5.0);
  for (int i = 0; i < 200; ++i) {
    const ScatterMatrix s = square_at(energy(rng), 10.0, width(rng));
    EXPECT_NEAR(transmission(s) + reflection(s), 1.0, 1e-10);
  }
}

TEST(Square, EvanescentMatchesOracle) {
  const BarrierChain chain(1.0, {SquareBarrier{5.0, 3.0, 0.0}});
  const ScatterMatrix direct = oracle(chain, 3.5, 100000);
  EXPECT_LT(max_deviation(square_at(3.5), direct), 1e-8);
  EXPECT_NEAR(phase(square_at(3.5)), phase(direct), 1e-6);
}

TEST(SquareProperty, MatchesOracleAcrossRegimes) {
  // Klein zone below 4, evanescent in (4, 6), propagating above 6.
  const BarrierChain chain(1.0, {SquareBarrier{5.0, 3.0, 0.0}});
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double e = 1.05 + (9.5 - 1.05) * i / 49.0;
    worst = std::max(worst, max_deviation(chain_smatrix(chain, e), oracle(chain, e, 100000)));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Delta, ZeroStrengthIsIdentity) {
  EXPECT_LT(max_deviation(delta_smatrix({0.0, 1.5}, WaveContext::at(2.0, 1.0)), ScatterMatrix::identity()), 1e-15);
}

TEST(Delta, IntegerMultiplesOfPiAreTransparent) {
  for (int n : {1, 2}) {
    for (double e : {1.5, 3.0, 10.0}) {
      const ScatterMatrix s = delta_smatrix({n * std::numbers::pi, 0.0}, WaveContext::at(e, 1.0));
      EXPECT_NEAR(std::abs(s.t), 1.0, 1e-12) << n << " " << e;
    }
  }
}

TEST(Delta, IsThinSquareLimit) {
  const WaveContext ctx = WaveContext::at(2.0, 1.0);
  const ScatterMatrix delta = delta_smatrix({2.0, 0.0}, ctx);
  EXPECT_LT(max_deviation(square_smatrix({2.0 / 1e-5, 1e-5, 0.0}, ctx), delta), 1e-4);
}

TEST(DeltaProperty, ConvergesAtFirstOrder) {
  const WaveContext ctx = WaveContext::at(2.0, 1.0);
  const ScatterMatrix delta = delta_smatrix({2.0, 0.0}, ctx);
  std::vector<double> errors;
  for (double a : {1e-2, 1e-3, 1e-4}) errors.push_back(max_deviation(square_smatrix({2.0 / a, a, 0.0}, ctx), delta));
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double order = std::log10(errors[i - 1] / errors[i]);
    EXPECT_NEAR(order, 1.0, 0.15) << "errors " << errors[i - 1] << " -> " << errors[i];
  }
}

TEST(Cusp, VanishingHeight) {
  const WaveContext ctx = WaveContext::at(2.0, 1.0);
  const ScatterMatrix s = cusp_smatrix({1e-10, 0.4, 0.0}, ctx);
  EXPECT_LT(std::abs(s.t - 1.0), 1e-6);
  EXPECT_LT(std::abs(s.r), 1e-6);
  EXPECT_LT(max_deviation(cusp_smatrix({0.0, 0.4, 0.0}, ctx), ScatterMatrix::identity()), 1e-15);
}

TEST(Cusp, ResonantAtQuotedStrength) {
  const ScatterMatrix s = cusp_smatrix({kCuspStrength, 0.4, 0.0}, WaveContext::at(1.3, 1.0));
  EXPECT_NEAR(transmission(s), 1.0, 1e-3);
  EXPECT_LT(unitarity_defect(s), 1e-8);
}

TEST(Cusp, MatchesOracle) {
  const BarrierChain chain(1.0, {CuspBarrier{kCuspStrength, 0.4, 0.0}});
  for (double e : {1.3, 2.0, 2.7}) {
    EXPECT_LT(max_deviation(chain_smatrix(chain, e), oracle(chain, e, 200000)), 1e-5) << e;
  }
}

TEST(Cusp, CenterShiftIsTranslation) {
  const WaveContext ctx = WaveContext::at(1.7, 1.0);
  const ScatterMatrix moved = cusp_smatrix({kCuspStrength, 0.4, 2.5}, ctx);
  EXPECT_LT(max_deviation(moved, translate(cusp_smatrix({kCuspStrength, 0.4, 0.0}, ctx), 2.5, ctx.k)), 1e-13);
}

class UnitarityDraws : public ::testing::Test {
 protected:
  std::mt19937_64 rng{2718};
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double energy() { return uniform(1.0 + 1e-3, 11.0); }
};

TEST_F(UnitarityDraws, Square) {
  for (int i = 0; i < 200; ++i) {
    const ScatterMatrix s = square_smatrix({uniform(0.1, 10.0), uniform(0.1, 5.0), uniform(-5.0, 5.0)},
                                           WaveContext::at(energy(), 1.0));
    EXPECT_LT(unitarity_defect(s), 1e-8);
    EXPECT_LT(std::abs(s.t - s.t_prime), 1e-14);
  }
}

TEST_F(UnitarityDraws, Cusp) {
  for (int i = 0; i < 200; ++i) {
    const CuspBarrier cusp{uniform(0.1, 8.0), uniform(0.1, 0.8), uniform(-5.0, 5.0)};
    const double e = energy();
    const ScatterMatrix s = cusp_smatrix(cusp, WaveContext::at(e, 1.0));
    EXPECT_LT(unitarity_defect(s), 1e-8) << cusp.height << " " << cusp.screening << " " << e;
    EXPECT_LT(std::abs(s.t - s.t_prime), 1e-10);
  }
}

TEST_F(UnitarityDraws, Delta) {
  for (int i = 0; i < 200; ++i) {
    const ScatterMatrix s = delta_smatrix({uniform(0.0, 10.0), uniform(-5.0, 5.0)}, WaveContext::at(energy(), 1.0));
    EXPECT_LT(unitarity_defect(s), 1e-8);
  }
}

TEST(Chain, EmptyAndSingle) {
  EXPECT_EQ(max_deviation(chain_smatrix(BarrierChain(1.0, {}), 2.0), ScatterMatrix::identity()), 0.0);
  const BarrierChain one(1.0, {CuspBarrier{kCuspStrength, 0.4, 1.0}});
  EXPECT_EQ(max_deviation(chain_smatrix(one, 1.8), cusp_smatrix({kCuspStrength, 0.4, 1.0}, WaveContext::at(1.8, 1.0))),
            0.0);
}

TEST(Chain, DoubleSquareMatchesHandExpansion) {
  const BarrierChain chain(1.0, {SquareBarrier{5.0, 3.0, 0.0}, SquareBarrier{5.0, 3.0, 5.0}});
  const ScatterMatrix want = reference::compose_expanded(reference::square_at_origin(2.5, 1.0, 5.0, 3.0, false),
                                                         reference::square_shifted(2.5, 1.0, 5.0, 3.0, 5.0));
  EXPECT_LT(max_deviation(chain_smatrix(chain, 2.5), want), 1e-12);
}

TEST(Chain, DoubleCuspCloseToOracle) {
  const BarrierChain chain(1.0, {CuspBarrier{kCuspStrength, 0.4, 0.0}, CuspBarrier{kCuspStrength, 0.4, 4.0}});
  EXPECT_NEAR(transmission(chain_smatrix(chain, 1.3)), transmission(oracle(chain, 1.3, 200000)), 0.05);
}

TEST(Chain, UnequalSquaresNeverTransparent) {
  const BarrierChain chain(1.0, {SquareBarrier{5.0, 3.0, 0.0}, SquareBarrier{4.0, 3.0, 5.0}});
  double best = 0.0;
  for (const SpectrumRecord& rec : sweep(chain, 1.01, 3.0, 2000)) best = std::max(best, rec.transmission);
  EXPECT_LT(best, 1.0 - 1e-3);
}

TEST(Chain, ErrorsNameTheEnergy) {
  const BarrierChain chain(1.0, {CuspBarrier{1e5, 1.0, 0.0}});
  try {
    chain_smatrix(chain, 1.5);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("at E = 1.5"), std::string::npos) << e.what();
  }
}

TEST(ChainValidation, RejectsBadGeometry) {
  auto code = [](double mass, std::vector<BarrierSpec> list) {
    try {
      BarrierChain chain(mass, std::move(list));
    } catch (const Error& e) {
      return std::optional<ErrorCode>(e.code());
    }
    return std::optional<ErrorCode>{};
  };
  EXPECT_EQ(code(0.0, {}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code(1.0, {SquareBarrier{5.0, 0.0, 0.0}}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code(1.0, {CuspBarrier{5.0, -1.0, 0.0}}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code(1.0, {SquareBarrier{std::nan(""), 1.0, 0.0}}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code(1.0, {SquareBarrier{5.0, 3.0, 0.0}, SquareBarrier{5.0, 3.0, 2.0}}), ErrorCode::InvalidArgument);
  EXPECT_EQ(code(1.0, {SquareBarrier{5.0, 3.0, 5.0}, SquareBarrier{5.0, 3.0, 0.0}}), ErrorCode::InvalidArgument);
}

TEST(ChainValidation, CloseCuspsWarn) {
  const BarrierChain close(1.0, {CuspBarrier{kCuspStrength, 0.4, 0.0}, CuspBarrier{kCuspStrength, 0.4, 2.0}});
  EXPECT_EQ(close.warnings().size(), 1u);
  const BarrierChain apart(1.0, {CuspBarrier{kCuspStrength, 0.4, 0.0}, CuspBarrier{kCuspStrength, 0.4, 4.0}});
  EXPECT_TRUE(apart.warnings().empty());
}

TEST(Resonances, SquareList) {
  const std::vector<double> list = square_transmission_resonances(5.0, 3.0, 1.0);
  ASSERT_EQ(list.size(), 3u);
  EXPECT_NEAR(list[0], 1.7030916905, 1e-9);
  EXPECT_NEAR(list[1], 2.6791185198, 1e-9);
  EXPECT_NEAR(list[2], 3.5520280696, 1e-9);
  EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
  EXPECT_TRUE(square_transmission_resonances(2.0, 1.0, 1.0).empty());
}

TEST(Resonances, MasslessListIsReflectionless) {
  const std::vector<double> list = square_transmission_resonances(5.0, 3.0, 0.0);
  ASSERT_EQ(list.size(), 4u);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const int n = 4 - static_cast<int>(i);
    EXPECT_NEAR(list[i], 5.0 - n * std::numbers::pi / 3.0, 1e-12);
    EXPECT_NEAR(std::abs(square_smatrix({5.0, 3.0, 0.0}, WaveContext::at(list[i], 0.0)).t), 1.0, 1e-10);
  }
}

TEST(Resonances, CuspStrength) {
  const double v0 = cusp_resonant_strength(1.3, 0.4, 1.0, 5.0, 8.0);
  EXPECT_NEAR(v0, kCuspStrength, 5e-4);
  EXPECT_NEAR(transmission(cusp_smatrix({v0, 0.4, 0.0}, WaveContext::at(1.3, 1.0))), 1.0, 1e-8);
}

TEST(Resonances, CuspStrengthAbsentInWeakBracket) {
  const WaveContext ctx = WaveContext::at(1.3, 1.0);
  double best = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    best = std::max(best, transmission(cusp_smatrix({0.1 + 0.9 * i / 2000.0, 0.4, 0.0}, ctx)));
  }
  ASSERT_LT(best, 1.0 - 1e-3);
  try {
    cusp_resonant_strength(1.3, 0.4, 1.0, 0.1, 1.0);
    FAIL() << "expected NoResonanceInBracket";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoResonanceInBracket);
  }
}

TEST(Profile, Values) {
  EXPECT_EQ(potential_profile(BarrierChain(1.0, {}), 0.3), 0.0);
  const BarrierChain cusps(1.0, {CuspBarrier{kCuspStrength, 0.4, 0.0}, CuspBarrier{kCuspStrength, 0.4, 4.0}});
  EXPECT_NEAR(potential_profile(cusps, 0.0), kCuspStrength * (1.0 + std::exp(-10.0)), 1e-12);
  const BarrierChain squares(1.0, {SquareBarrier{5.0, 3.0, 0.0}, SquareBarrier{4.0, 3.0, 5.0}});
  EXPECT_EQ(potential_profile(squares, 4.0), 0.0);
  EXPECT_EQ(potential_profile(squares, 1.0), 5.0);
  EXPECT_EQ(potential_profile(squares, 6.0), 4.0);
}

}  // namespace
}  // namespace dirac
