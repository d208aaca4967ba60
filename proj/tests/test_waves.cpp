#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "covtable.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "specfun.hpp"
#include "waves.hpp"

using namespace hyperwave;

namespace {

std::vector<HyperPoint> ball_points(int n, double R, int count, std::uint64_t seed) {
  Stream s(seed, 0);
  return sample_uniform_ball(n, R, count, s);
}

}  // namespace

TEST(PlaneWave, OriginModulusAndSphericalAverage) {
  Stream s(11, 0);
  const SpectralParams p(2, 3.0);
  const auto u = random_direction(2, s);
  EXPECT_NEAR(std::abs(plane_wave(HyperPoint::origin(2), p, u) - 1.0), 0.0, 1e-15);

  auto x = ball_points(2, 1.0, 1, 3).front();
  const double pairing = x[0] - x.coords().tail(2).dot(u);
  EXPECT_NEAR(std::abs(plane_wave(x, p, u)), std::pow(pairing, -p.sigma()), 1e-13);
  EXPECT_NEAR(std::abs(plane_wave(x, SpectralParams(2, 17.0), u)), std::abs(plane_wave(x, p, u)), 1e-13);

  // the circle average over equally spaced directions is a trapezoid rule for the spherical function
  const int count = 10000;
  cplx avg = 0.0;
  for (int k = 0; k < count; ++k) {
    const double th = 2 * std::numbers::pi * k / count;
    Eigen::VectorXd d(2);
    d << std::cos(th), std::sin(th);
    avg += plane_wave(x, p, d);
  }
  avg /= double(count);
  EXPECT_NEAR(avg.real(), spherical_F(p, distance(x, HyperPoint::origin(2))), 1e-8);
  EXPECT_NEAR(avg.imag(), 0.0, 1e-8);
}

TEST(Covariance, SinglePointPairAndIsometry) {
  const SpectralParams p(3, 4.0);
  auto pts = ball_points(3, 1.5, 30, 5);
  std::vector<HyperPoint> one{pts[0]};
  EXPECT_EQ(covariance_matrix(one, p)(0, 0), 1.0);
  std::vector<HyperPoint> two{pts[0], pts[1]};
  EXPECT_NEAR(covariance_matrix(two, p)(0, 1), spherical_F(p, distance(pts[0], pts[1])), 1e-10);

  Stream s(6, 0);
  auto g = random_isometry(3, s);
  std::vector<HyperPoint> moved;
  for (const auto& x : pts) moved.push_back(g.apply(x));
  const Eigen::MatrixXd a = covariance_matrix(pts, p), b = covariance_matrix(moved, p);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LT((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  for (int i = 0; i < a.rows(); ++i) EXPECT_EQ(a(i, i), 1.0);
}

TEST(Covariance, TableMatchesAutoRoute) {
  for (int n : {2, 3, 4}) {
    for (double alpha : {1.0, 10.0, 60.0}) {
      const SpectralParams p(n, alpha);
      const CovarianceTable t(p, 5.0);
      for (double r : lin_space(0.0, 5.0, 337)) {
        const double want = spherical_F(p, r);
        EXPECT_LT(std::abs(t(r) - want), 1e-9) << n << " " << alpha << " " << r;
        EXPECT_NEAR(t.one_minus(r), 1.0 - want, 1e-9);
      }
    }
  }
}

TEST(GaussianField, MarginalsAndCorrelation) {
  const SpectralParams p(2, 2.0);
  auto pts = ball_points(2, 1.0, 6, 7);
  const int K = 10000;
  auto fields = sample_gaussian_field(pts, p, K, 99);
  ASSERT_EQ(fields.size(), static_cast<size_t>(K));
  EXPECT_EQ(fields[0].provenance, "cholesky");
  std::vector<double> first;
  double s00 = 0, s01 = 0, s11 = 0;
  for (const auto& f : fields) {
    ASSERT_EQ(f.values.size(), pts.size());
    first.push_back(f.values[0]);
    s00 += f.values[0] * f.values[0];
    s11 += f.values[1] * f.values[1];
    s01 += f.values[0] * f.values[1];
  }
  EXPECT_GE(s00 / K, 0.95);
  EXPECT_LE(s00 / K, 1.05);
  const double corr = s01 / std::sqrt(s00 * s11);
  EXPECT_NEAR(corr, spherical_F(p, distance(pts[0], pts[1])), 4.0 / std::sqrt(K));

  std::sort(first.begin(), first.end());
  double ks = 0.0;
  for (int i = 0; i < K; ++i) {
    const double c = normal_cdf(first[i]);
    ks = std::max({ks, std::abs(c - double(i) / K), std::abs(c - double(i + 1) / K)});
  }
  EXPECT_LT(ks, 1.628 / std::sqrt(double(K)));
}

TEST(GaussianField, DeterministicAcrossExecutors) {
  const SpectralParams p(2, 5.0);
  auto pts = ball_points(2, 1.0, 40, 8);
  auto a = sample_gaussian_field(pts, p, 5, 1234);
  Executor reversed = [](std::size_t count, const std::function<void(std::size_t)>& task) {
    for (std::size_t i = count; i-- > 0;) task(i);
  };
  auto b = sample_gaussian_field(pts, p, 5, 1234, reversed);
  for (int k = 0; k < 5; ++k) EXPECT_EQ(a[k].values, b[k].values);
  auto c = sample_gaussian_field(pts, p, 5, 1235);
  EXPECT_NE(a[0].values, c[0].values);
}

TEST(GaussianField, DuplicatePointsNeedJitterOrFail) {
  const SpectralParams p(2, 3.0);
  auto pts = ball_points(2, 1.0, 3, 9);
  pts.push_back(pts[0]);
  Eigen::MatrixXd c = covariance_matrix(pts, p);
  FieldFactor f(c);
  EXPECT_GT(f.jitter(), 0.0);
  Eigen::MatrixXd singular = Eigen::MatrixXd::Ones(3, 3);
  singular(0, 1) = singular(1, 0) = -1.0;
  EXPECT_THROW(FieldFactor{singular}, IllConditionedError);
}

TEST(Superposition, MeanZero) {
  const SpectralParams p(2, 4.0);
  auto pts = ball_points(2, 1.0, 3, 10);
  const int draws = 10000;
  double sum = 0, sumsq = 0;
  for (int k = 0; k < draws; ++k) {
    Stream sk(13, k);
    const double v = sample_superposition(pts, p, 4, sk).real_field.values[1];
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / draws, se = std::sqrt((sumsq / draws - mean * mean) / draws);
  EXPECT_LT(std::abs(mean), 4 * se);
}

TEST(Superposition, SingleWaveModulusIsPairingPower) {
  const SpectralParams p(3, 2.5);
  auto pts = ball_points(3, 1.2, 5, 14);
  // with N = 1 the field is e^{i phi} e(x, u) for the first direction drawn from the stream
  Stream s(15, 0);
  auto f = sample_superposition(pts, p, 1, s);
  Stream again(15, 0);
  again.uniform();  // phase
  const auto u = random_direction(3, again);
  for (size_t i = 0; i < pts.size(); ++i) {
    const double pairing = pts[i][0] - pts[i].coords().tail(3).dot(u);
    EXPECT_NEAR(std::abs(f.complex_values[i]), std::pow(pairing, -p.sigma()), 1e-12);
  }
}

TEST(Superposition, CovarianceConvergesAtRootN) {
  const SpectralParams p(2, 3.0);
  auto pts = ball_points(2, 1.0, 20, 16);
  const Eigen::MatrixXd exact = covariance_matrix(pts, p);
  std::vector<double> ns, devs;
  for (int N : {64, 256, 1024}) {
    double dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      Stream s(17, static_cast<std::uint64_t>(N * 100 + rep));
      dev += (superposition_covariance(pts, p, N, s) - exact).cwiseAbs().maxCoeff();
    }
    ns.push_back(std::log(double(N)));
    devs.push_back(std::log(dev / 20));
  }
  EXPECT_GT(devs[0], devs[1]);
  EXPECT_GT(devs[1], devs[2]);
  const double slope = least_squares_line(ns, devs).slope;
  EXPECT_GT(slope, -0.7);
  EXPECT_LT(slope, -0.3);
}

TEST(Superposition, EmpiricalCovarianceAtN512) {
  const SpectralParams p(2, 3.0);
  auto pts = ball_points(2, 1.0, 20, 21);
  const Eigen::MatrixXd exact = covariance_matrix(pts, p);
  const int K = 20000;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(20, 20);
  for (int k = 0; k < K; ++k) {
    Stream s(22, k);
    const auto f = sample_superposition(pts, p, 512, s);
    const Eigen::Map<const Eigen::VectorXd> v(f.real_field.values.data(), 20);
    acc.noalias() += v * v.transpose();
  }
  EXPECT_LT((acc / K - exact).cwiseAbs().maxCoeff(), 0.05);
}

TEST(Eigenfunction, ResidualSmallAndSecondOrder) {
  Stream s(19, 0);
  const SpectralParams p(2, 3.0);
  auto x = ball_points(2, 1.0, 1, 20).front();
  const auto u = random_direction(2, s);
  const auto c1 = verify_eigenfunction(x, p, u, 1e-3);
  EXPECT_LT(c1.residual, 1e-3);
  EXPECT_FALSE(c1.step_warning);
  const auto c2 = verify_eigenfunction(x, p, u, 2e-3);
  const auto c4 = verify_eigenfunction(x, p, u, 4e-3);
  const double ratio = c4.residual / c2.residual;
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
  EXPECT_LT(verify_eigenfunction(HyperPoint::origin(2), p, u, 1e-3).residual, 1e-3);
  EXPECT_TRUE(verify_eigenfunction(x, p, u, 0.1).step_warning);
}
