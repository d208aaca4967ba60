#include "hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "numeric.hpp"

namespace hyperwave {

SpectralParams::SpectralParams(int n, double alpha) : n_(n), alpha_(alpha) {
  if (n < 2) throw DomainError("dimension n must be at least 2, got " + std::to_string(n));
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a positive finite number");
}

SpectralParams SpectralParams::from_lambda(int n, double lambda) {
  double s = 0.5 * (n - 1);
  if (!(lambda > s * s)) throw DomainError("lambda must exceed sigma^2");
  return SpectralParams(n, std::sqrt(lambda - s * s));
}

double minkowski(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double s = x(0) * y(0);
  for (Eigen::Index i = 1; i < x.size(); ++i) s -= x(i) * y(i);
  return s;
}

HyperPoint HyperPoint::origin(int n) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c(0) = 1.0;
  return HyperPoint(c);
}

HyperPoint HyperPoint::from_ambient(const Eigen::VectorXd& coords) {
  if (coords.size() < 3) throw DomainError("a point of H^n needs n+1 >= 3 coordinates");
  if (!(coords(0) > 0.0)) throw InvalidPointError("point is not on the upper sheet (x0 <= 0)");
  double q = minkowski(coords, coords);
  double scale = std::max(1.0, coords(0) * coords(0));
  if (!(std::abs(q - 1.0) <= 1e-8 * scale)) throw InvalidPointError("point is not on the hyperboloid [x,x]=1");
  // keep the spatial part, re-lift x0 exactly
  Eigen::VectorXd c = coords;
  c(0) = std::sqrt(1.0 + coords.tail(coords.size() - 1).squaredNorm());
  return HyperPoint(c);
}

HyperPoint HyperPoint::from_spatial(const Eigen::VectorXd& spatial) {
  Eigen::VectorXd c(spatial.size() + 1);
  c(0) = std::sqrt(1.0 + spatial.squaredNorm());
  c.tail(spatial.size()) = spatial;
  return HyperPoint(c);
}

HyperPoint HyperPoint::from_polar(double r, const Eigen::VectorXd& unit_direction) {
  double nrm = unit_direction.norm();
  if (!(nrm > 0.0)) throw DomainError("direction must be nonzero");
  Eigen::VectorXd c(unit_direction.size() + 1);
  c(0) = std::cosh(r);
  c.tail(unit_direction.size()) = unit_direction * (std::sinh(r) / nrm);
  return HyperPoint(c);
}

Isometry Isometry::identity(int n) { return Isometry(Eigen::MatrixXd::Identity(n + 1, n + 1)); }

Isometry Isometry::from_parts(const Eigen::MatrixXd& rotation, double rapidity, const Eigen::VectorXd& direction) {
  const Eigen::Index n = rotation.rows();
  Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n + 1, n + 1);
  rot.bottomRightCorner(n, n) = rotation;
  Eigen::MatrixXd boost = Eigen::MatrixXd::Identity(n + 1, n + 1);
  if (rapidity != 0.0) {
    Eigen::VectorXd u = direction / direction.norm();
    double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
    boost(0, 0) = ch;
    boost.block(0, 1, 1, n) = sh * u.transpose();
    boost.block(1, 0, n, 1) = sh * u;
    boost.bottomRightCorner(n, n) += (ch - 1.0) * u * u.transpose();
  }
  return Isometry(boost * rot);
}

HyperPoint Isometry::apply(const HyperPoint& x) const {
  Eigen::VectorXd y = m_ * x.coords();
  return HyperPoint::from_spatial(y.tail(y.size() - 1));
}

double Isometry::form_defect() const {
  const Eigen::Index d = m_.rows();
  Eigen::MatrixXd eta = -Eigen::MatrixXd::Identity(d, d);
  eta(0, 0) = 1.0;
  return (m_.transpose() * eta * m_ - eta).cwiseAbs().maxCoeff();
}

double distance(const HyperPoint& x, const HyperPoint& y) {
  if (x.n() != y.n()) throw DomainError("points live in different dimensions");
  double p = minkowski(x.coords(), y.coords());
  if (p < 1.0 - 1e-9) throw InvalidPointError("Minkowski pairing below 1: invalid point");
  if (p > 1.5) return std::acosh(p);
  // close points: cosh d - 1 = chord^2 / 2 with chord^2 = -[x-y, x-y]
  Eigen::VectorXd diff = x.coords() - y.coords();
  double chord2 = std::max(0.0, -minkowski(diff, diff));
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

double distance_polar(double r1, double r2, double theta) {
  double a = std::sinh(0.5 * (r1 - r2));
  double b = std::sin(0.5 * theta);
  double x = 2.0 * a * a + 2.0 * std::sinh(r1) * std::sinh(r2) * b * b;  // cosh d - 1
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, 0.5 * x)));
}

Eigen::MatrixXd tangent_frame(const HyperPoint& base) {
  const int n = base.n();
  const Eigen::VectorXd& b = base.coords();
  Eigen::MatrixXd frame(n + 1, n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(n + 1);
    t(k + 1) = 1.0;
    t -= minkowski(t, b) * b;
    for (int j = 0; j < k; ++j) t += minkowski(t, frame.col(j)) * frame.col(j);
    t /= std::sqrt(-minkowski(t, t));
    frame.col(k) = t;
  }
  return frame;
}

HyperPoint exp_map(const HyperPoint& base, const Eigen::VectorXd& v) {
  if (v.size() != base.n()) throw DomainError("tangent vector has wrong dimension");
  double len = v.norm();
  if (len == 0.0) return base;
  Eigen::VectorXd dir = tangent_frame(base) * (v / len);
  Eigen::VectorXd y = std::cosh(len) * base.coords() + std::sinh(len) * dir;
  return HyperPoint::from_spatial(y.tail(y.size() - 1));
}

double ball_volume(int n, double R) {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  if (!(R > 0.0)) throw DomainError("radius must be positive");
  if (n == 2) {
    double s = std::sinh(0.5 * R);
    return 4.0 * std::numbers::pi * s * s;
  }
  if (n == 3) {
    if (R > 0.5) return std::numbers::pi * (std::sinh(2.0 * R) - 2.0 * R);
    double x = 2.0 * R, term = x, sum = 0.0;
    for (int k = 1; k < 40; ++k) {
      term *= x * x / ((2.0 * k) * (2.0 * k + 1.0));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::numbers::pi * sum;
  }
  auto f = [n](double r) { return std::pow(std::sinh(r), n - 1); };
  return omega(n - 1) * integrate(f, 0.0, R, 1e-12).value;
}

namespace {

double int_power(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// intervals are at most R/4095 long, so a fixed 10-point rule is exact to rounding
double sinh_power_integral(int n, double a, double b) {
  const auto& gl = gauss_legendre(10);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a), s = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i)
    s += gl.weights[i] * int_power(std::sinh(mid + half * gl.nodes[i]), n - 1);
  return s * half;
}

}  // namespace

BallSampler::BallSampler(int n, double R) : n_(n), R_(R) {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  if (!(R > 0.0)) throw DomainError("radius must be positive");
  const int nodes = 4096;
  h_ = R / (nodes - 1);
  nodes_.resize(nodes);
  cum_.resize(nodes);
  cum_[0] = 0.0;
  nodes_[0] = 0.0;
  for (int k = 1; k < nodes; ++k) {
    nodes_[k] = (k == nodes - 1) ? R : k * h_;
    cum_[k] = cum_[k - 1] + sinh_power_integral(n, nodes_[k - 1], nodes_[k]);
  }
  // Fritsch-Carlson slopes of r as a function of G
  std::vector<double> secant(nodes - 1);
  for (int k = 0; k + 1 < nodes; ++k) secant[k] = (nodes_[k + 1] - nodes_[k]) / (cum_[k + 1] - cum_[k]);
  slope_.resize(nodes);
  slope_[0] = secant[0];
  slope_[nodes - 1] = secant[nodes - 2];
  for (int k = 1; k + 1 < nodes; ++k) {
    double a = secant[k - 1], b = secant[k];
    slope_[k] = 2.0 * a * b / (a + b);  // harmonic mean keeps the interpolant monotone
  }
}

double BallSampler::partial(int k, double r) const { return sinh_power_integral(n_, nodes_[k], r); }

double BallSampler::radial_cdf(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= R_) return 1.0;
  int k = std::min(static_cast<int>(r / h_), static_cast<int>(nodes_.size()) - 2);
  return (cum_[k] + partial(k, r)) / cum_.back();
}

double BallSampler::sample_radius(double u) const {
  double target = u * cum_.back();
  auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
  int k = static_cast<int>(it - cum_.begin()) - 1;
  k = std::clamp(k, 0, static_cast<int>(cum_.size()) - 2);
  double lo = nodes_[k], hi = nodes_[k + 1];
  double g0 = cum_[k], g1 = cum_[k + 1], dg = g1 - g0;
  double t = (target - g0) / dg;
  // cubic Hermite guess
  double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  double r = h00 * lo + h10 * dg * slope_[k] + h01 * hi + h11 * dg * slope_[k + 1];
  if (!(r > lo && r < hi)) r = 0.5 * (lo + hi);
  for (int it2 = 0; it2 < 100 && hi - lo > 1e-12; ++it2) {
    double f = g0 + partial(k, r) - target;
    if (f > 0)
      hi = r;
    else
      lo = r;
    double d = int_power(std::sinh(r), n_ - 1);
    double next = (d > 0) ? r - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) < 1e-13) {
      r = next;
      break;
    }
    r = next;
  }
  return r;
}

HyperPoint BallSampler::sample(Stream& stream) const {
  double r = sample_radius(stream.uniform());
  Eigen::VectorXd dir(n_);
  double nrm = 0.0;
  while (nrm < 1e-300) {
    for (int i = 0; i < n_; ++i) dir(i) = stream.normal();
    nrm = dir.norm();
  }
  return HyperPoint::from_polar(r, dir / nrm);
}

std::vector<HyperPoint> BallSampler::sample(int count, Stream& stream) const {
  std::vector<HyperPoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sample(stream));
  return out;
}

std::vector<HyperPoint> sample_uniform_ball(int n, double R, int count, Stream& stream) {
  if (count < 1) throw DomainError("count must be at least 1");
  return BallSampler(n, R).sample(count, stream);
}

double boundary_distance(int n, double R, double r, double psi) {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  if (!(r >= 0.0) || !(r < R)) throw DomainError("boundary_distance needs 0 <= r < R");
  if (!(psi >= 0.0 && psi <= std::numbers::pi)) throw DomainError("psi must lie in [0, pi]");
  double lo = std::max(0.0, R - r), hi = R + r;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    if (distance_polar(r, mid, psi) < R)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double boundary_distance_closed(double R, double r, double psi) {
  double shr = std::sinh(r), shR = std::sinh(R);
  double s2 = std::sin(psi);
  s2 *= s2;
  double disc = std::max(0.0, shR * shR - s2 * shr * shr);
  double ch = (std::cosh(R) * std::cosh(r) + std::cos(psi) * shr * std::sqrt(disc)) / (1.0 + s2 * shr * shr);
  return std::acosh(std::max(1.0, ch));
}

Isometry random_isometry(int n, Stream& stream) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = stream.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (rr(j, j) < 0) q.col(j) = -q.col(j);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u(i) = stream.normal();
  double rapidity = std::abs(stream.normal());
  return Isometry::from_parts(q, rapidity, u);
}

}  // namespace hyperwave
