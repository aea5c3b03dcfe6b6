#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "phonon/boundaries.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace phonon;
using phonon::testing::Cases;
using phonon::testing::rel_err;

namespace {
const FluidSpec nat = natural_units();

// Catalan's constant; sum'(m^2 + n^2)^-2 = 4 zeta(2) beta(2)
constexpr double kCatalan = 0.915965594177219015054603514932;
const double kSquareLatticeConstant = 4.0 * (pi * pi / 6.0) * kCatalan;

FluidSpec random_spec(Cases& c) {
  return make_fluid_spec(c.log_uniform(1e-35, 1), c.log_uniform(1e-3, 1e4), c.log_uniform(1e-1, 1e4), UnitSystem::SI);
}
}  // namespace

TEST(CasimirForce, Examples) {
  EXPECT_NEAR(casimir_force_per_area(nat, 1.0), pi * pi / 480.0, 1e-17);
  EXPECT_NEAR(casimir_force_per_area(nat, 2.0), pi * pi / 7680.0, 1e-17);
  const auto s1 = make_fluid_spec(1.0, 1.0, 300.0, UnitSystem::SI);
  const auto s2 = make_fluid_spec(1.0, 1.0, 600.0, UnitSystem::SI);
  EXPECT_EQ(casimir_force_per_area(s2, 1.0), 2.0 * casimir_force_per_area(s1, 1.0));
  EXPECT_THROW(casimir_force_per_area(nat, 0.0), DomainError);
}

TEST(SinglePlate, Examples) {
  EXPECT_NEAR(single_plate(nat, 1.0).value, -1.0 / (32.0 * pi * pi), 1e-16);
  EXPECT_NEAR(single_plate(nat, 1.0).value, -3.16629e-3, 1e-8);
  EXPECT_LT(rel_err(single_plate(nat, 2.0).value, -1.0 / (512.0 * pi * pi)), 1e-15);
  // the image at distance 2z
  EXPECT_LT(rel_err(single_plate(nat, 1.0).value, equal_time_correlation(nat, 2.0)), 1e-15);
  EXPECT_THROW(single_plate(nat, 0.0), DomainError);
}

TEST(ParallelPlates, PrintedMidpoint) {
  EXPECT_NEAR(parallel_plates_closed(nat, 1.0, 0.5).value, -16.0 / 1440.0, 1e-16);
  EXPECT_THROW(parallel_plates_closed(nat, 1.0, 1.0), DomainError);
  EXPECT_THROW(parallel_plates_closed(nat, 1.0, 0.0), DomainError);
}

TEST(ParallelPlates, ImageSumMidpointAndTail) {
  const auto full = parallel_plates_image_sum(nat, 1.0, 0.5, 2000);
  EXPECT_LT(rel_err(full.value, -pi * pi * 16.0 / 1440.0), 1e-10);
  EXPECT_TRUE(full.warnings.empty());
  const auto one = parallel_plates_image_sum(nat, 1.0, 0.5, 1);
  EXPECT_LE(std::abs(one.value - full.value), one.error_bound);
  EXPECT_FALSE(one.warnings.empty());
}

TEST(ParallelPlates, ImageSumToClosedRatioIsPiSquared) {
  // frozen from the image-sum oracle: the printed prefactor lacks pi^2
  for (int k = 1; k <= 9; ++k) {
    const double z = 0.1 * k;
    const double ratio = parallel_plates_image_sum(nat, 1.0, z, 2000).value / parallel_plates_closed(nat, 1.0, z).value;
    EXPECT_LT(rel_err(ratio, pi * pi), 1e-8) << z;
  }
}

TEST(ParallelPlates, SinglePlateLimits) {
  // far plate: a = 1000 z
  EXPECT_LT(rel_err(parallel_plates_image_sum(nat, 1000.0, 1.0, 2000).value, single_plate(nat, 1.0).value), 1e-8);
  for (double x : {0.01, 0.02, 0.04}) {
    const double v = parallel_plates_image_normalized(nat, 1.0, x).value;
    EXPECT_LT(rel_err(v, single_plate(nat, x).value), 0.01) << x;
  }
}

TEST(ParallelPlates, MirrorSymmetryIsExact) {
  Cases c(401);
  for (int i = 0; i < 500; ++i) {
    // dyadic grid, so that a - z and a - (a - z) are exact
    const double unit = std::ldexp(1.0, c.integer(-20, 10));
    const int n = c.integer(2, 1 << 20);
    const double a = n * unit;
    const double z = c.integer(1, n - 1) * unit;
    ASSERT_EQ(a - (a - z), z);
    EXPECT_EQ(parallel_plates_closed(nat, a, z).value, parallel_plates_closed(nat, a, a - z).value);
  }
}

TEST(Boundaries, NegativeOnRandomGrids) {
  Cases c(402);
  for (int i = 0; i < 300; ++i) {
    const auto spec = random_spec(c);
    const double a = c.log_uniform(1e-6, 1e2);
    const double alpha = c.uniform(1e-2, 2 * pi - 1e-2);
    EXPECT_LT(single_plate(spec, a).value, 0.0);
    EXPECT_LT(parallel_plates_closed(spec, a, a * c.uniform(1e-3, 1 - 1e-3)).value, 0.0);
    EXPECT_LT(wedge(spec, alpha, a, alpha * c.uniform(1e-3, 1 - 1e-3)).value, 0.0);
    EXPECT_LT(cosmic_string(spec, alpha, a).value, 0.0);
  }
  for (int i = 0; i < 10; ++i) {
    const double L = c.log_uniform(0.1, 10);
    EXPECT_LT(torus(random_spec(c), L, L * c.uniform(0.5, 2), L * c.uniform(0.5, 2)).value, 0.0);
  }
}

TEST(Boundaries, QuarticScaling) {
  Cases c(403);
  for (int i = 0; i < 200; ++i) {
    const auto spec = random_spec(c);
    const double l = c.log_uniform(1e-3, 1e3);
    const double x = c.uniform(0.01, 0.99);
    const double alpha = c.uniform(0.1, 2 * pi - 0.1);
    auto check = [&](double v1, double v2) { EXPECT_LT(rel_err(v2, v1 / 16.0), 1e-13); };
    check(single_plate(spec, l).value, single_plate(spec, 2 * l).value);
    check(parallel_plates_closed(spec, l, x * l).value, parallel_plates_closed(spec, 2 * l, 2 * x * l).value);
    check(wedge(spec, alpha, l, x * alpha).value, wedge(spec, alpha, 2 * l, x * alpha).value);
    check(cosmic_string(spec, alpha, l).value, cosmic_string(spec, alpha, 2 * l).value);
  }
  EXPECT_LT(rel_err(torus(nat, 2, 2, 2).value, torus(nat, 1, 1, 1).value / 16.0), 1e-13);
}

TEST(Boundaries, LinearInFluidPrefactor) {
  const auto a = make_fluid_spec(1.0, 1.0, 1.0, UnitSystem::SI);
  const auto b = make_fluid_spec(3.0, 5.0, 7.0, UnitSystem::SI);
  EXPECT_LT(rel_err(wedge(b, 1.0, 1.0, 0.3).value, wedge(a, 1.0, 1.0, 0.3).value * 15.0 / 7.0), 1e-15);
  EXPECT_LT(rel_err(torus(b, 1, 2, 3).value, torus(a, 1, 2, 3).value * 15.0 / 7.0), 1e-15);
}

TEST(Torus, CubicLatticeConstant) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = torus(nat, 1.0, 1.0, 1.0, 1e-6);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double c3 = -2.0 * pi * pi * r.value;
  EXPECT_NEAR(c3, phonon::testing::kCubicLatticeConstant, 1e-3);
  EXPECT_LE(std::abs(c3 - phonon::testing::kCubicLatticeConstant), 2.0 * pi * pi * r.error_bound);
  EXPECT_LT(secs, 5.0);
}

TEST(Torus, LongAxisApproachesSquareLatticeMonotonically) {
  // Poisson summation over (m, n): the l != 0 shells add pi^3 / (3 L1^2) plus O(exp(-2 pi L1))
  double prev = INFINITY;
  for (double L1 : {4.0, 8.0, 16.0}) {
    const auto r = torus(nat, L1, 1.0, 1.0, 1e-8);
    const double s = -2.0 * pi * pi * r.value;
    EXPECT_GT(s, kSquareLatticeConstant);
    EXPECT_LT(s, prev);
    EXPECT_LT(rel_err(s - kSquareLatticeConstant, pi * pi * pi / (3.0 * L1 * L1)), 1e-5) << L1;
    prev = s;
  }
}

TEST(Torus, RejectsBadLengths) {
  EXPECT_THROW(torus(nat, 0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(torus(nat, 1.0, -1.0, 1.0), DomainError);
}

TEST(Wedge, HalfSpaceExample) {
  EXPECT_NEAR(wedge(nat, pi, 1.0, pi / 2).value, -pi * pi / 32.0, 1e-15);
  EXPECT_NEAR(wedge(nat, pi, 1.0, pi / 2).value, -0.308425, 1e-6);
}

TEST(Wedge, ReflectionSymmetryIsExact) {
  Cases c(404);
  for (int i = 0; i < 500; ++i) {
    const int n = c.integer(2, 1 << 20);
    const double unit = std::ldexp(1.0, -20) * 6.0;  // keeps alpha below 2 pi
    const double alpha = n * unit;
    const double th = c.integer(1, n - 1) * unit;
    ASSERT_EQ(alpha - (alpha - th), th);
    EXPECT_EQ(wedge(nat, alpha, 1.0, th).value, wedge(nat, alpha, 1.0, alpha - th).value);
  }
}

TEST(Wedge, DomainChecks) {
  EXPECT_THROW(wedge(nat, 0.0, 1.0, 0.1), DomainError);
  EXPECT_THROW(wedge(nat, 7.0, 1.0, 0.1), DomainError);
  EXPECT_THROW(wedge(nat, pi, 1.0, pi), DomainError);
  EXPECT_THROW(wedge(nat, pi, 1.0, 0.0), DomainError);
  EXPECT_THROW(wedge(nat, pi, 1.0, 1e-14), DomainError);
  EXPECT_THROW(wedge(nat, pi, 0.0, 1.0), DomainError);
}

TEST(CosmicString, Examples) {
  EXPECT_EQ(cosmic_string(nat, 2 * pi, 1.0).value, 0.0);
  EXPECT_LT(rel_err(cosmic_string(nat, pi, 1.0).value, -1.0 / (32.0 * pi * pi)), 1e-15);
  const double near = cosmic_string(nat, 2 * pi - 1e-6, 1.0).value;
  EXPECT_LT(near, 0.0);
  EXPECT_LT(std::abs(near), 1e-5);
  EXPECT_THROW(cosmic_string(nat, 1.0, 0.0), DomainError);
}

TEST(CosmicString, MagnitudeFallsMonotonicallyToZero) {
  double prev = -INFINITY;
  for (int i = 1; i <= 4000; ++i) {
    const double v = cosmic_string(nat, 2 * pi * i / 4000.0, 1.0).value;
    EXPECT_GT(v, prev) << i;
    prev = v;
  }
  EXPECT_EQ(prev, 0.0);
}

TEST(PointSplit, WedgeOracleConvergesAndRatioIsMinusAlphaFourth) {
  // frozen: printed wedge / point-split oracle = -alpha^4 at every theta
  for (double alpha : {pi, pi / 2, 2 * pi / 3}) {
    for (double f : {1.0 / 6, 1.0 / 4, 1.0 / 3, 1.0 / 2}) {
      const double th = f * alpha;
      const auto o = point_split_oracle(nat, ConicalKind::wedge, alpha, 1.0, th);
      const double ratio = wedge(nat, alpha, 1.0, th).value / o.value;
      EXPECT_LT(rel_err(ratio, -quartic(alpha)), 1e-6) << alpha << " " << th;
      EXPECT_LT(o.error_estimate, 1e-6 * std::abs(o.value));
    }
  }
}

TEST(PointSplit, HalfSpaceOracleIsMirrorOfSinglePlate) {
  // alpha = pi is one plate at distance r sin(theta); the oracle carries the opposite sign
  const auto o = point_split_oracle(nat, ConicalKind::wedge, pi, 1.0, pi / 2);
  EXPECT_LT(rel_err(o.value, -single_plate(nat, 1.0).value), 1e-7);
}

TEST(PointSplit, StringOracle) {
  EXPECT_NEAR(point_split_oracle(nat, ConicalKind::string, 2 * pi, 1.0, 0.0).value, 0.0, 1e-10);
  for (double alpha : {1.0, 2.0, pi, 5.0}) {
    const auto o = point_split_oracle(nat, ConicalKind::string, alpha, 1.0, 0.0);
    EXPECT_LT(rel_err(cosmic_string(nat, alpha, 1.0).value / o.value, -1.0), 1e-6) << alpha;
  }
}

TEST(PointSplit, RejectsBadLadders) {
  EXPECT_THROW(point_split_oracle(nat, ConicalKind::wedge, pi, 1.0, pi / 2, {0.1, 0.2}), DomainError);
  EXPECT_THROW(point_split_oracle(nat, ConicalKind::wedge, pi, 1.0, 0.1, {0.1, 0.05}), DomainError);
  EXPECT_THROW(point_split_oracle(nat, ConicalKind::wedge, pi, 1.0, pi, {}), DomainError);
}
