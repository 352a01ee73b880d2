#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "smrt/forward.hpp"
#include "smrt/phantoms.hpp"

namespace smrt {
namespace {

TEST(Phantom, BallCentreIsInside) {
  EXPECT_EQ(eval_phantom(Phantom::ball(), {0, 0, 2}), 1.0);
  EXPECT_EQ(eval_phantom(Phantom::ball(), {0, 0, 3}), 1.0);  // closed ball
  EXPECT_EQ(eval_phantom(Phantom::ball(), {0, 0, 3.0001}), 0.0);
}

TEST(Phantom, MonomialVanishesBelowPlane) {
  EXPECT_EQ(eval_phantom(Phantom::monomial(), {1.5, -2.0, -1.0}), 0.0);
}

TEST(Phantom, MonomialValue) {
  // 1^2 * 3 * 2^3
  EXPECT_EQ(eval_phantom(Phantom::monomial(), {1, 3, 2}), 24.0);
}

TEST(Phantom, BallMustBeAbovePlane) {
  EXPECT_THROW(Phantom::ball({0, 0, 1}, 1.0), DomainError);
  EXPECT_THROW(Phantom::ball({0, 0, 2}, 0.0), DomainError);
  EXPECT_NO_THROW(Phantom::ball({1, -1, 1.5}, 0.5));
}

TEST(Phantom, SupportBound) {
  EXPECT_TRUE(std::isinf(Phantom::monomial().support_bound()));
  EXPECT_DOUBLE_EQ(Phantom::ball({0, 0, 2}, 1).support_bound(), 3.0);
}

TEST(AnalyticMean, BallAtAxis) {
  // d = 2, u = 2: 1/2 - (4 + 4 - 1) / 16
  EXPECT_DOUBLE_EQ(analytic_mean(Phantom::ball(), 0, 0, 2.0), 0.0625);
}

TEST(AnalyticMean, BallBelowCapBand) {
  EXPECT_EQ(analytic_mean(Phantom::ball(), 0, 0, 0.5), 0.0);
  EXPECT_EQ(analytic_mean(Phantom::ball(), 0, 0, 3.5), 0.0);
}

TEST(AnalyticMean, BallTangencyGivesZero) {
  const double d = std::sqrt(4.0 + 0.25 + 0.09);
  EXPECT_NEAR(analytic_mean(Phantom::ball(), 0.5, 0.3, d - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(analytic_mean(Phantom::ball(), 0.5, 0.3, d + 1.0), 0.0, 1e-15);
}

TEST(AnalyticMean, BallMatchesClosedForm) {
  // 1/2 - (3 + u^2 + x^2 + y^2) / (4 u sqrt(4 + x^2 + y^2)) inside the band.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = c(rng), y = c(rng);
    const double d = std::sqrt(4 + x * x + y * y);
    const double u = d - 1.0 + 2.0 * t(rng);
    const double closed = 0.5 - (3 + u * u + x * x + y * y) / (4 * u * d);
    EXPECT_NEAR(analytic_mean(Phantom::ball(), x, y, u), closed, 1e-14);
  }
}

TEST(AnalyticMean, MonomialValue) {
  // (1/8) 1 * 3 * 8 + (1/48) 3 * 32
  EXPECT_DOUBLE_EQ(analytic_mean(Phantom::monomial(), 1, 3, 2), 5.0);
}

TEST(AnalyticMean, ZeroRadiusIsPointValueOnPlane) {
  EXPECT_EQ(analytic_mean(Phantom::monomial(), 1, 3, 0), 0.0);
  EXPECT_EQ(analytic_mean(Phantom::ball(), 0, 0, 0), 0.0);
}

TEST(AnalyticMean, NegativeRadiusThrows) {
  EXPECT_THROW(analytic_mean(Phantom::ball(), 0, 0, -0.1), DomainError);
}

TEST(AnalyticMean, BallMeanIsAnAreaFraction) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> c(-3.0, 3.0);
  std::uniform_real_distribution<double> r(0.0, 6.0);
  const Phantom balls[] = {Phantom::ball(), Phantom::ball({0.4, -0.2, 1.3}, 0.7)};
  for (const auto& b : balls)
    for (int trial = 0; trial < 2000; ++trial) {
      const double v = analytic_mean(b, c(rng), c(rng), r(rng));
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
}

TEST(AnalyticMean, VanishesWhenSphereMissesSupport) {
  // The support lies in the ball of radius R = support_bound about the
  // origin, so S(P, u) misses it when u > |P| + R or u < |P| - R.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> c(-8.0, 8.0);
  std::uniform_real_distribution<double> r(0.0, 12.0);
  const Phantom b = Phantom::ball({0.5, 0.5, 2.5}, 0.8);
  const double bound = b.support_bound();
  int checked = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const double x = c(rng), y = c(rng), u = r(rng);
    const double dist = std::sqrt(x * x + y * y);
    if (u > dist + bound || u < dist - bound) {
      ASSERT_EQ(analytic_mean(b, x, y, u), 0.0);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(AnalyticMean, MatchesQuadratureForMonomial) {
  const SphereQuadratureRule rule(16, 32);
  const Phantom p = Phantom::monomial();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  std::uniform_real_distribution<double> r(0.1, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double x = c(rng), y = c(rng), u = r(rng);
    const double exact = analytic_mean(p, x, y, u);
    const double num = spherical_mean(p, x, y, u, rule);
    EXPECT_LE(std::abs(num - exact), 1e-6 * std::max(1.0, std::abs(exact)));
  }
}

TEST(AnalyticMean, MatchesQuadratureForOffsetBall) {
  const SphereQuadratureRule rule(512, 1024);
  const Phantom p = Phantom::ball({0.3, -0.4, 1.5}, 0.6);
  const auto& ball = std::get<UnitBall>(p.kind());
  const double cx = 0.2, cy = 0.1;
  const double dx = cx - ball.center.x, dy = cy - ball.center.y;
  const double d = std::sqrt(dx * dx + dy * dy + ball.center.z * ball.center.z);
  for (double u = d - ball.radius + 0.05; u <= d + ball.radius - 0.05; u += 0.1)
    EXPECT_NEAR(spherical_mean(p, cx, cy, u, rule), analytic_mean(p, cx, cy, u),
                1e-3);
}

}  // namespace
}  // namespace smrt
