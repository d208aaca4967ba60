#include "waves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "specfun.hpp"

namespace hyperwave {

std::complex<double> plane_wave(const HyperPoint& x, const SpectralParams& p, const Eigen::VectorXd& u) {
  if (u.size() != x.n()) throw DomainError("direction has wrong dimension");
  double pairing = x[0] - x.coords().tail(u.size()).dot(u);
  if (!(pairing > 0.0)) throw DomainError("plane wave pairing must be positive");
  return std::exp(std::complex<double>(-p.sigma(), p.alpha()) * std::log(pairing));
}

Eigen::MatrixXd ambient_matrix(const std::vector<HyperPoint>& points) {
  if (points.empty()) return {};
  Eigen::MatrixXd x(points.front().n() + 1, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) x.col(static_cast<Eigen::Index>(i)) = points[i].coords();
  return x;
}

Eigen::MatrixXd distance_matrix(const Eigen::MatrixXd& ambient) {
  const Eigen::Index m = ambient.cols();
  Eigen::MatrixXd eta_x = ambient;
  eta_x.bottomRows(ambient.rows() - 1) *= -1.0;
  Eigen::MatrixXd pair = ambient.transpose() * eta_x;
  Eigen::MatrixXd d(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    d(j, j) = 0.0;
    for (Eigen::Index i = j + 1; i < m; ++i) {
      double pv = pair(i, j), dist;
      if (pv > 1.5) {
        dist = std::acosh(pv);
      } else {
        double chord2 = 0.0;
        double t = ambient(0, i) - ambient(0, j);
        chord2 -= t * t;
        for (Eigen::Index k = 1; k < ambient.rows(); ++k) {
          t = ambient(k, i) - ambient(k, j);
          chord2 += t * t;
        }
        dist = 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, chord2)));
      }
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return d;
}

double max_radius(const std::vector<HyperPoint>& points) {
  double r = 0.0;
  for (const auto& x : points) r = std::max(r, std::acosh(std::max(1.0, x[0])));
  return r;
}

Eigen::MatrixXd covariance_matrix(const std::vector<HyperPoint>& points, const CovarianceTable& table) {
  const Eigen::MatrixXd ambient = ambient_matrix(points);
  const Eigen::Index m = ambient.cols();
  Eigen::MatrixXd eta_x = ambient;
  eta_x.bottomRows(ambient.rows() - 1) *= -1.0;
  Eigen::MatrixXd c = ambient.transpose() * eta_x;
  for (Eigen::Index j = 0; j < m; ++j) {
    c(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < m; ++i) {
      double pv = c(i, j), dist;
      if (pv > 1.5) {
        dist = std::acosh(pv);
      } else {
        double t = ambient(0, i) - ambient(0, j);
        double chord2 = -t * t;
        for (Eigen::Index k = 1; k < ambient.rows(); ++k) {
          t = ambient(k, i) - ambient(k, j);
          chord2 += t * t;
        }
        dist = 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, chord2)));
      }
      c(i, j) = table(std::min(dist, table.r_max()));
    }
  }
  c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
  return c;
}

Eigen::MatrixXd covariance_matrix(const std::vector<HyperPoint>& points, const SpectralParams& p) {
  if (points.size() <= 1) return Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(points.size()));
  double reach = 2.0 * max_radius(points) + 1e-9;
  return covariance_matrix(points, CovarianceTable(p, reach));
}

FieldFactor::FieldFactor(Eigen::MatrixXd covariance) : l_(std::move(covariance)) {
  const Eigen::Index m = l_.rows();
  const Eigen::VectorXd diag = l_.diagonal();
  for (int k = 0; k <= 4; ++k) {
    double jitter = 1e-12 * std::pow(10.0, k);
    if (k > 0) l_.triangularView<Eigen::StrictlyLower>() = l_.transpose();
    l_.diagonal() = diag.array() + jitter;
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(l_);
    if (llt.info() == Eigen::Success) {
      l_.triangularView<Eigen::StrictlyUpper>().setZero();
      jitter_ = jitter;
      return;
    }
  }
  throw IllConditionedError("covariance matrix of " + std::to_string(m) +
                            " points is not positive definite even with jitter 1e-8; thin the point set");
}

Eigen::VectorXd FieldFactor::draw(Stream& stream) const {
  Eigen::VectorXd z(l_.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = stream.normal();
  return l_.triangularView<Eigen::Lower>() * z;
}

std::vector<FieldRealization> sample_gaussian_field(const std::vector<HyperPoint>& points, const SpectralParams& p,
                                                    int realizations, std::uint64_t seed, const Executor& executor) {
  if (points.empty()) throw DomainError("need at least one point");
  if (static_cast<int>(points.size()) > kMaxCholeskyPoints)
    throw DomainError("too many points for exact sampling (max " + std::to_string(kMaxCholeskyPoints) + ")");
  if (realizations < 1) throw DomainError("realizations must be at least 1");
  const FieldFactor factor(covariance_matrix(points, p));
  std::vector<FieldRealization> out(realizations, FieldRealization{p, {}, {}, "cholesky", seed, 0});
  run_indexed(executor, static_cast<std::size_t>(realizations), [&](std::size_t k) {
    Stream stream(seed, k);
    Eigen::VectorXd v = factor.draw(stream);
    FieldRealization& f = out[k];
    f.points = points;
    f.values.assign(v.data(), v.data() + v.size());
    f.stream = k;
  });
  return out;
}

Eigen::VectorXd random_direction(int n, Stream& stream) {
  Eigen::VectorXd u(n);
  double nrm = 0.0;
  while (nrm < 1e-300) {
    for (int i = 0; i < n; ++i) u(i) = stream.normal();
    nrm = u.norm();
  }
  return u / nrm;
}

SuperpositionField sample_superposition(const std::vector<HyperPoint>& points, const SpectralParams& p, int N,
                                        Stream& stream) {
  if (N < 1) throw DomainError("superposition needs N >= 1");
  const int n = points.empty() ? 2 : points.front().n();
  std::vector<std::complex<double>> acc(points.size(), {0.0, 0.0});
  for (int j = 0; j < N; ++j) {
    double phi = 2.0 * std::numbers::pi * stream.uniform();
    Eigen::VectorXd u = random_direction(n, stream);
    std::complex<double> ph = std::polar(1.0, phi);
    for (std::size_t i = 0; i < points.size(); ++i) acc[i] += ph * plane_wave(points[i], p, u);
  }
  SuperpositionField out{{}, FieldRealization{p, points, {}, "superposition(" + std::to_string(N) + ")", stream.seed(), stream.index()}};
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  out.complex_values.resize(points.size());
  out.real_field.values.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.complex_values[i] = acc[i] * scale;
    out.real_field.values[i] = std::numbers::sqrt2 * out.complex_values[i].real();
  }
  return out;
}

Eigen::MatrixXd superposition_covariance(const std::vector<HyperPoint>& points, const SpectralParams& p, int N,
                                         Stream& stream) {
  if (N < 1) throw DomainError("superposition needs N >= 1");
  const int n = points.empty() ? 2 : points.front().n();
  const Eigen::Index m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd waves(m, N);
  for (int j = 0; j < N; ++j) {
    Eigen::VectorXd u = random_direction(n, stream);
    for (Eigen::Index i = 0; i < m; ++i) waves(i, j) = plane_wave(points[static_cast<std::size_t>(i)], p, u);
  }
  Eigen::MatrixXcd g = waves * waves.adjoint();
  return g.real() / static_cast<double>(N);
}

EigenCheck verify_eigenfunction(const HyperPoint& x, const SpectralParams& p, const Eigen::VectorXd& u, double h) {
  auto f = [&](const Eigen::VectorXd& y) {
    double q = minkowski(y, y);
    Eigen::VectorXd z = y / std::sqrt(q);
    double pairing = z(0) - z.tail(u.size()).dot(u);
    return std::exp(std::complex<double>(-p.sigma(), p.alpha()) * std::log(pairing));
  };
  const Eigen::VectorXd& c = x.coords();
  std::complex<double> e0 = f(c), box(0.0, 0.0);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    Eigen::VectorXd plus = c, minus = c;
    plus(i) += h;
    minus(i) -= h;
    std::complex<double> second = (f(plus) - 2.0 * e0 + f(minus)) / (h * h);
    box += (i == 0 ? -1.0 : 1.0) * second;
  }
  double lam = p.lambda();
  return {std::abs(box + lam * e0) / (lam * std::abs(e0)), h < 1e-5 || h > 1e-2};
}

}  // namespace hyperwave
