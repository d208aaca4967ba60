#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rng.hpp"

namespace hyperwave {

class SpectralParams {
 public:
  SpectralParams(int n, double alpha);

  int n() const { return n_; }
  double alpha() const { return alpha_; }
  double sigma() const { return 0.5 * (n_ - 1); }
  double lambda() const { return sigma() * sigma() + alpha_ * alpha_; }

  // alpha recovered from an eigenvalue; lambda must exceed sigma^2
  static SpectralParams from_lambda(int n, double lambda);

 private:
  int n_;
  double alpha_;
};

class HyperPoint {
 public:
  static HyperPoint origin(int n);
  // Renormalizes onto the upper sheet; rejects vectors that are not close to it.
  static HyperPoint from_ambient(const Eigen::VectorXd& coords);
  // Lifts spatial coordinates (x1..xn) to the upper sheet exactly.
  static HyperPoint from_spatial(const Eigen::VectorXd& spatial);
  static HyperPoint from_polar(double r, const Eigen::VectorXd& unit_direction);

  int n() const { return static_cast<int>(coords_.size()) - 1; }
  const Eigen::VectorXd& coords() const { return coords_; }
  double operator[](int i) const { return coords_(i); }

 private:
  explicit HyperPoint(Eigen::VectorXd c) : coords_(std::move(c)) {}
  Eigen::VectorXd coords_;
};

double minkowski(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

class Isometry {
 public:
  static Isometry identity(int n);
  // Boost of the given rapidity along unit direction u, composed after the rotation.
  static Isometry from_parts(const Eigen::MatrixXd& rotation, double rapidity, const Eigen::VectorXd& direction);

  const Eigen::MatrixXd& matrix() const { return m_; }
  HyperPoint apply(const HyperPoint& x) const;
  double form_defect() const;  // max entry of |M^T eta M - eta|

 private:
  explicit Isometry(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

double distance(const HyperPoint& x, const HyperPoint& y);
double distance_polar(double r1, double r2, double theta);
HyperPoint exp_map(const HyperPoint& base, const Eigen::VectorXd& v);
// Orthonormal tangent frame at base (columns), built by Minkowski Gram-Schmidt.
Eigen::MatrixXd tangent_frame(const HyperPoint& base);

double ball_volume(int n, double R);

// Radial inverse-CDF sampler for the uniform law on B_R, built once per (n, R).
class BallSampler {
 public:
  BallSampler(int n, double R);

  HyperPoint sample(Stream& stream) const;
  std::vector<HyperPoint> sample(int count, Stream& stream) const;
  double sample_radius(double u) const;  // inverse CDF
  double radial_cdf(double r) const;

  int n() const { return n_; }
  double radius() const { return R_; }

 private:
  double partial(int k, double r) const;  // cumulative sinh^{n-1} from node k to r

  int n_;
  double R_;
  double h_;
  std::vector<double> nodes_;
  std::vector<double> cum_;
  std::vector<double> slope_;  // monotone cubic derivative dr/dG at nodes
};

std::vector<HyperPoint> sample_uniform_ball(int n, double R, int count, Stream& stream);

double boundary_distance(int n, double R, double r, double psi);
// Closed form of the exit distance; the configuration is planar, so it holds for every n.
double boundary_distance_closed(double R, double r, double psi);

Isometry random_isometry(int n, Stream& stream);

}  // namespace hyperwave
