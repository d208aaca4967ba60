#include "numeric.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace hyperwave {

namespace {

QuadratureRule build_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

// Golub-Welsch for the probabilists' Hermite recurrence x H_k = H_{k+1} + k H_{k-1}; nodes are then polished by
// Newton on the orthonormal recurrence and weights taken as 1 / sum h_k(x)^2, which keeps the tiny outer weights
// accurate in the relative sense.
template <class T>
void hermite_rule(int n, std::vector<T>& nodes, std::vector<T>& weights) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  nodes.resize(n);
  weights.resize(n);
  const T eps = std::numeric_limits<T>::epsilon();
  for (int i = 0; i < n; ++i) {
    T x = solver.eigenvalues()(i);
    T norm_sq = 0;
    for (int it = 0; it < 8; ++it) {
      T h0 = 1, h1 = x;
      norm_sq = n > 1 ? 1 + x * x : T(1);
      for (int k = 1; k + 1 < n; ++k) {
        T h2 = (x * h1 - std::sqrt(T(k)) * h0) / std::sqrt(T(k + 1));
        h0 = h1;
        h1 = h2;
        norm_sq += h1 * h1;
      }
      // h1 = h_{n-1}, h0 = h_{n-2}; h_n' = sqrt(n) h_{n-1}
      T hn = (x * h1 - std::sqrt(T(n - 1)) * h0) / std::sqrt(T(n));
      T dx = hn / (std::sqrt(T(n)) * h1);
      x -= dx;
      if (std::abs(dx) < 4 * eps * std::max(T(1), std::abs(x))) break;
    }
    nodes[i] = x;
    weights[i] = 1 / norm_sq;
  }
}

QuadratureRule build_hermite(int n) {
  QuadratureRule rule;
  hermite_rule(n, rule.nodes, rule.weights);
  return rule;
}

template <class Builder>
const QuadratureRule& cached(std::map<int, QuadratureRule>& store, std::mutex& mu, int n, Builder build) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = store.find(n);
  if (it == store.end()) it = store.emplace(n, build(n)).first;
  return it->second;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  static std::map<int, QuadratureRule> store;
  static std::mutex mu;
  return cached(store, mu, n, build_legendre);
}

const QuadratureRule& gauss_hermite_normal(int n) {
  static std::map<int, QuadratureRule> store;
  static std::mutex mu;
  return cached(store, mu, n, build_hermite);
}

ExtendedRule gauss_hermite_normal_extended(int n) {
  ExtendedRule rule;
  hermite_rule(n, rule.nodes, rule.weights);
  return rule;
}

double omega(int k) {
  double h = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

void NeumaierSum::add(double x) {
  double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

Integral integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, unsigned max_depth) {
  if (a == b) return {0.0, 0.0};
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &err);
  return {v, err};
}

std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> lin_space(double lo, double hi, int count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_quantile(double p) {
  static const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, p);
}

}  // namespace hyperwave
