#include <cmath>
#include <numbers>

#include "numeric.hpp"
#include "specfun.hpp"

namespace hyperwave {

namespace {

// sum_k (-x^2/4)^k / (k! (nu+1)_k); the alternating terms cancel badly for large x,
// so the recurrence runs in binary128 there.
template <class T>
double scaled_series(double nu, double x) {
  T q = -static_cast<T>(x) * static_cast<T>(x) / 4;
  T term = 1, sum = 1;
  T big = 1;
  for (int k = 0; k < 500; ++k) {
    term *= q / (static_cast<T>(k + 1) * (static_cast<T>(nu) + static_cast<T>(k + 1)));
    sum += term;
    T a = term < 0 ? -term : term;
    if (a > big) big = a;
    if (k > x && a < big * static_cast<T>(1e-36)) break;
  }
  return static_cast<double>(sum);
}

double scaled_series_double(double nu, double x) {
  double q = -0.25 * x * x, term = 1.0;
  NeumaierSum sum;
  sum.add(1.0);
  for (int k = 0; k < 200; ++k) {
    term *= q / ((k + 1.0) * (nu + k + 1.0));
    sum.add(term);
    if (std::abs(term) < 1e-18 * std::abs(sum.value())) break;
  }
  return sum.value();
}

double hankel(double nu, double x) {
  double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0, term = 1.0, last = 1.0;
  for (int k = 1; k < 60; ++k) {
    double odd = 2.0 * k - 1.0;
    double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) > last && k > 2) break;
    last = std::abs(next);
    term = next;
    // a_k / x^k with alternating signs in pairs
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (last < 1e-17) break;
  }
  double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j_scaled(double nu, double x) {
  x = std::abs(x);
  double pref = std::pow(2.0, -nu) / std::tgamma(nu + 1.0);
  if (x <= 8.0) return pref * scaled_series_double(nu, x);
  if (x <= 30.0) return pref * scaled_series<__float128>(nu, x);
  return hankel(nu, x) / std::pow(x, nu);
}

double bessel_j(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x > 30.0) return hankel(nu, x);
  return bessel_j_scaled(nu, x) * std::pow(x, nu);
}

}  // namespace hyperwave
