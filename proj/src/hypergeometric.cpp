#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "specfun.hpp"

namespace hyperwave {

namespace {

template <class T>
struct Cx {
  T re, im;
};

template <class T>
Cx<T> mul(Cx<T> a, Cx<T> b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class T>
Cx<T> divide(Cx<T> a, Cx<T> b) {
  T d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

template <class T>
Cx<T> lift(cplx z) {
  return {static_cast<T>(z.real()), static_cast<T>(z.imag())};
}

template <class T>
double mag(Cx<T> z) {
  return std::hypot(static_cast<double>(z.re), static_cast<double>(z.im));
}

struct SeriesSum {
  cplx value;
  double abs_sum;    // sum of |terms|, drives the roundoff estimate
  double tail;       // truncation estimate
  bool converged;
};

template <class T>
SeriesSum gauss_series(cplx a, cplx b, cplx c, double z, int max_terms, double eps) {
  const Cx<T> A = lift<T>(a), B = lift<T>(b), C = lift<T>(c);
  const T Z = static_cast<T>(z);
  Cx<T> term{1, 0}, sum{1, 0};
  double abs_sum = 1.0, prev = 1.0, biggest = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    const T kk = static_cast<T>(k);
    Cx<T> num = mul(Cx<T>{A.re + kk, A.im}, Cx<T>{B.re + kk, B.im});
    Cx<T> den{(C.re + kk) * static_cast<T>(k + 1), C.im * static_cast<T>(k + 1)};
    term = divide(mul(term, num), den);
    term.re *= Z;
    term.im *= Z;
    sum.re += term.re;
    sum.im += term.im;
    double t = mag(term);
    abs_sum += t;
    biggest = std::max(biggest, t);
    double s = std::max(mag(sum), 1e-300);
    double ratio = prev > 0 ? t / prev : 0.0;
    prev = t;
    if (k > 2 && ratio < 1.0) {
      double tail = t * ratio / (1.0 - ratio);
      // the partial sums can dwarf the final value, so also wait until the tail is below the roundoff already incurred
      if ((tail < 1e-17 * s && tail < 1e-2 * eps * biggest) || t == 0.0)
        return {cplx(static_cast<double>(sum.re), static_cast<double>(sum.im)), abs_sum, tail, true};
    }
  }
  return {cplx(static_cast<double>(sum.re), static_cast<double>(sum.im)), abs_sum, prev, false};
}

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

bool is_integer(cplx z) { return z.imag() == 0.0 && z.real() == std::floor(z.real()); }

Hyp2f1Result pfaff(cplx a, cplx b, cplx c, double z) {
  const double w = z / (z - 1.0);
  const cplx pref = std::exp(-a * std::log(1.0 - z));
  const double apref = std::abs(pref);
  using Wide = boost::multiprecision::cpp_bin_float_100;
  const double eps[4] = {std::numeric_limits<double>::epsilon(), std::numeric_limits<long double>::epsilon(),
                         1.0e-34, 1.0e-100};
  Hyp2f1Result out{};
  for (int prec = 0; prec < 4; ++prec) {
    SeriesSum s;
    if (prec == 0)
      s = gauss_series<double>(a, c - b, c, w, 20000, eps[0]);
    else if (prec == 1)
      s = gauss_series<long double>(a, c - b, c, w, 20000, eps[1]);
    else if (prec == 2)
      s = gauss_series<__float128>(a, c - b, c, w, 20000, eps[2]);
    else
      s = gauss_series<Wide>(a, c - b, c, w, 20000, eps[3]);
    double round = 4.0 * eps[prec] * s.abs_sum + 1e-16 * std::abs(s.value);
    double err = round + (s.converged ? s.tail : std::abs(s.value));
    out.value = pref * s.value;
    out.error = apref * err;
    out.precision = prec;
    double rel = err / std::max(std::abs(s.value), 1e-300);
    out.degraded = rel > 1e-8;
    if (rel < 1e-13) break;
  }
  return out;
}

// 1/z connection formula, evaluated in log space
Hyp2f1Result connection(cplx a, cplx b, cplx c, double z) {
  if (is_integer(a - b)) throw DomainError("hyp2f1: a - b is an integer, connection formula degenerate");
  const double y = 1.0 / z;
  const double lmz = std::log(-z);
  const cplx lgc = log_gamma_complex(c);
  cplx total(0.0, 0.0);
  double err = 0.0;
  for (int side = 0; side < 2; ++side) {
    cplx p = side == 0 ? a : b;
    cplx q = side == 0 ? b : a;
    if (is_nonpositive_integer(q) || is_nonpositive_integer(c - p)) continue;  // 1/Gamma vanishes
    cplx lcoef = lgc + log_gamma_complex(q - p) - log_gamma_complex(q) - log_gamma_complex(c - p) - p * lmz;
    SeriesSum s = gauss_series<double>(p, p - c + 1.0, p - q + 1.0, y, 5000, 2.2e-16);
    cplx term = std::exp(lcoef) * s.value;
    total += term;
    double scale = std::exp(lcoef.real());
    err += scale * (4e-16 * s.abs_sum + s.tail) + 1e-13 * (1.0 + std::abs(lcoef)) * std::abs(term);
  }
  Hyp2f1Result out{};
  out.value = total;
  out.error = err;
  out.precision = -1;
  out.degraded = err > 1e-8 * std::max(std::abs(total), 1e-300);
  return out;
}

}  // namespace

Hyp2f1Result hyp2f1(cplx a, cplx b, cplx c, double z) {
  if (!(z <= 0.0)) throw DomainError("hyp2f1 is implemented for real z <= 0");
  if (is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a nonpositive integer");
  if (z == 0.0) return {cplx(1.0, 0.0), 0.0, false, 0};
  const double w = z / (z - 1.0);
  if (w <= kPfaffThreshold) return pfaff(a, b, c, z);
  return connection(a, b, c, z);
}

}  // namespace hyperwave
