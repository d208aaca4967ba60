#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "rng.hpp"
#include "stats.hpp"

using namespace hyperwave;

TEST(Wasserstein, GaussianSamplesAreClose) {
  Stream s(1, 0);
  std::vector<double> x(10000);
  for (auto& v : x) v = s.normal();
  EXPECT_LT(wasserstein1_gaussian(x, 1.0), 0.03);
}

TEST(Wasserstein, PointMassAgainstUnitGaussian) {
  std::vector<double> zeros(4000, 0.0);
  EXPECT_NEAR(wasserstein1_gaussian(zeros, 1.0), std::sqrt(2 / std::numbers::pi), 1e-3);
  EXPECT_THROW(wasserstein1_gaussian(zeros, 0.0), DomainError);
  EXPECT_THROW(wasserstein1_gaussian(std::vector<double>(50, 0.0), 1.0), DomainError);
}

TEST(Wasserstein, ScaleEquivariance) {
  Stream s(2, 0);
  std::vector<double> x(500), y(500);
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = 0.3 + 1.7 * s.normal();
    y[i] = 4.0 * x[i];
  }
  EXPECT_NEAR(wasserstein1_gaussian(y, 16.0 * 2.0), 4.0 * wasserstein1_gaussian(x, 2.0), 1e-12);
}

TEST(Clt, ReportFieldsAndRejections) {
  const SpectralParams p(2, 5.0);
  auto r = clt_report(p, 1.0, 2, 200, 200, 3);
  EXPECT_EQ(r.K, 200);
  EXPECT_EQ(r.M, 200);
  EXPECT_GT(r.theoretical_variance, 0.0);
  EXPECT_GT(r.empirical_variance, 0.0);
  EXPECT_GE(r.w1_to_gaussian, 0.0);
  EXPECT_FALSE(r.no_clt_claim);
  EXPECT_LE(r.corrected_variance, r.empirical_variance);
  EXPECT_TRUE(clt_report(p, 1.0, 3, 100, 100, 3).no_clt_claim);
  EXPECT_THROW(clt_report(p, 1.0, 0, 100, 200, 3), DomainError);
}

TEST(Clt, DistanceShrinksWithRadius) {
  // at fixed energy the second chaos becomes Gaussian as the ball grows
  const SpectralParams p(2, 4.0);
  const double w_small = clt_report(p, 0.5, 2, 300, 600, 7).w1_to_gaussian;
  const double w_large = clt_report(p, 2.5, 2, 600, 600, 7).w1_to_gaussian;
  EXPECT_LT(w_large, w_small);
}

TEST(LocalLimit, DecreasingDeviationAndWarning) {
  auto res = local_limit_sup({1e2, 1e3, 1e4}, 2, 5.0, 11);
  ASSERT_EQ(res.rows.size(), 3u);
  EXPECT_GT(res.rows[0].sup_dev, res.rows[1].sup_dev);
  EXPECT_GT(res.rows[1].sup_dev, res.rows[2].sup_dev);
  EXPECT_LT(res.rows[2].sup_dev, 0.05);
  EXPECT_TRUE(res.extent_warning);
  EXPECT_FALSE(local_limit_sup({1e4}, 3, 5.0, 5).extent_warning);
  // a grid with a single radius of zero holds only coincident points
  EXPECT_NEAR(local_limit_sup({1e2}, 2, 1e-12, 2).rows[0].sup_dev, 0.0, 1e-9);
}
