#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hyperwave {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]; rules are built once and shared read-only.
const QuadratureRule& gauss_legendre(int n);

// Gauss-Hermite rule for the standard normal weight phi(x) (weights sum to 1).
const QuadratureRule& gauss_hermite_normal(int n);

struct ExtendedRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};
// the same rule in long double, for identity checks that cancel heavily
ExtendedRule gauss_hermite_normal_extended(int n);

double omega(int k);  // surface area of the unit k-sphere in R^{k+1}

class NeumaierSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double pairwise_sum(const double* x, std::size_t n);

struct Integral {
  double value;
  double error;
};

// Adaptive Gauss-Kronrod on [a, b] (finite).
Integral integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                   unsigned max_depth = 18);

std::vector<double> log_space(double lo, double hi, int count);
std::vector<double> lin_space(double lo, double hi, int count);

struct LineFit {
  double slope;
  double intercept;
};

LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y);

double normal_cdf(double x);
double normal_pdf(double x);
double normal_quantile(double p);

}  // namespace hyperwave
