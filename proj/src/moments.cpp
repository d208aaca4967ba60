#include "moments.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"
#include "numeric.hpp"
#include "rng.hpp"
#include "specfun.hpp"

namespace hyperwave {

namespace {

double clenshaw(const std::vector<double>& c, double t) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    double b0 = c[k] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + t * b1 - b2;
}

double int_power(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

PanelAntiderivative::PanelAntiderivative(const std::function<double(double)>& g, double a, double b,
                                         double max_width)
    : a_(a) {
  if (!(b > a)) throw DomainError("antiderivative needs b > a");
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
  w_ = (b - a) / panels;
  constexpr int N = kDegree;
  std::vector<double> tnode(N + 1);
  for (int j = 0; j <= N; ++j) tnode[j] = std::cos(std::numbers::pi * j / N);
  offsets_.assign(panels + 1, 0.0);
  coef_.resize(panels);
  std::vector<double> gv(N + 1), bk(N + 3, 0.0);
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * w_;
    for (int j = 0; j <= N; ++j) gv[j] = g(mid + 0.5 * w_ * tnode[j]);
    std::fill(bk.begin(), bk.end(), 0.0);
    for (int k = 0; k <= N; ++k) {
      double s = 0.0;
      for (int j = 0; j <= N; ++j) {
        double term = gv[j] * std::cos(std::numbers::pi * j * k / N);
        s += (j == 0 || j == N) ? 0.5 * term : term;
      }
      bk[k] = 2.0 * s / N;
    }
    bk[0] *= 0.5;
    bk[N] *= 0.5;
    std::vector<double> B(N + 2, 0.0);
    B[1] = bk[0] - 0.5 * bk[2];
    for (int k = 2; k <= N + 1; ++k) B[k] = (bk[k - 1] - bk[k + 1]) / (2.0 * k);
    double at_left = 0.0, total = 0.0;
    for (int k = 1; k <= N + 1; ++k) {
      B[k] *= 0.5 * w_;
      at_left += (k % 2 == 0) ? B[k] : -B[k];
      total += B[k];
    }
    B[0] = -at_left;
    coef_[p] = B;
    offsets_[p + 1] = offsets_[p] + total + B[0];
  }
}

double PanelAntiderivative::operator()(double x) const {
  const int panels = static_cast<int>(coef_.size());
  int p = static_cast<int>(std::floor((x - a_) / w_));
  p = std::clamp(p, 0, panels - 1);
  double t = 2.0 * (x - (a_ + p * w_)) / w_ - 1.0;
  t = std::clamp(t, -1.0, 1.0);
  return offsets_[p] + clenshaw(coef_[p], t);
}

DoubleIntegral radial_double_integral(int n, double R, const std::function<double(double)>& f,
                                      double max_panel_width, double rel_tol) {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  if (!(R > 0.0)) throw DomainError("radius must be positive");
  auto g = [&](double s) { return int_power(std::sinh(s), n - 1) * f(s); };
  const PanelAntiderivative G(g, 0.0, 2.0 * R, max_panel_width);
  const double wo = omega(n - 1), wa = omega(n - 2);
  double inner_err_max = 0.0;
  auto theta = [&](double r) {
    if (r >= R) return 0.0;
    auto ang = [&](double psi) {
      double w = n == 2 ? 1.0 : int_power(std::sin(psi), n - 2);
      return w * G(boundary_distance_closed(R, r, psi));
    };
    Integral in = integrate(ang, 0.0, std::numbers::pi, 0.1 * rel_tol, 15);
    inner_err_max = std::max(inner_err_max, in.error / std::max(std::abs(in.value), 1e-300));
    return wo * int_power(std::sinh(r), n - 1) * wa * in.value;
  };
  Integral out = integrate(theta, 0.0, R, rel_tol, 15);
  double err = out.error + inner_err_max * std::abs(out.value);
  return {out.value, err, err > 10.0 * rel_tol * std::abs(out.value) + 1e-300};
}

std::string to_string(VarianceMethod m) {
  switch (m) {
    case VarianceMethod::exact_angular: return "exact_angular";
    case VarianceMethod::sandwich_lower: return "sandwich_lower";
    case VarianceMethod::sandwich_upper: return "sandwich_upper";
    case VarianceMethod::montecarlo: return "montecarlo";
  }
  return "unknown";
}

namespace {

double factorial(int q) { return std::tgamma(q + 1.0); }

double panel_width(const SpectralParams& p, int q) {
  if (q == 0) return 0.05;
  return std::min(0.05, 3.0 / (q * p.alpha()));
}

VarianceResult variance_impl(const SpectralParams& p, double R, int q, VarianceMethod method, bool absolute) {
  if (q < 0) throw DomainError("chaos order must be nonnegative");
  if (!(R > 0.0)) throw DomainError("radius must be positive");
  const int n = p.n();
  const CovarianceTable table(p, 2.0 * R * (1.0 + 1e-9));
  auto f = [&](double s) {
    double v = std::pow(table(std::min(s, table.r_max())), q);
    return absolute ? std::abs(v) : v;
  };
  VarianceResult res{n, q, R, p.alpha(), p.lambda(), 0.0, 0.0, method, 0.0, q % 2 == 1, false};
  if (method == VarianceMethod::exact_angular) {
    DoubleIntegral di = radial_double_integral(n, R, f, panel_width(p, q));
    res.value_per_qfact = di.value;
    res.est_abs_error = di.error * factorial(q);
    res.accuracy_flag = di.accuracy_flag;
  } else if (method == VarianceMethod::sandwich_lower || method == VarianceMethod::sandwich_upper) {
    auto g = [&](double s) { return int_power(std::sinh(s), n - 1) * f(s); };
    const PanelAntiderivative G(g, 0.0, 2.0 * R, panel_width(p, q));
    const double wo = omega(n - 1);
    const double sign = method == VarianceMethod::sandwich_lower ? -1.0 : 1.0;
    auto outer = [&](double r) { return wo * int_power(std::sinh(r), n - 1) * wo * G(R + sign * r); };
    Integral in = integrate(outer, 0.0, R, 1e-10, 15);
    res.value_per_qfact = in.value;
    res.est_abs_error = in.error * factorial(q);
  } else {
    throw DomainError("variance_Cq: use contraction-style Monte Carlo helpers for the montecarlo method");
  }
  res.value = factorial(q) * res.value_per_qfact;
  return res;
}

}  // namespace

VarianceResult variance_Cq(const SpectralParams& p, double R, int q, VarianceMethod method) {
  return variance_impl(p, R, q, method, false);
}

VarianceResult variance_Cq_abs(const SpectralParams& p, double R, int q) {
  return variance_impl(p, R, q, VarianceMethod::exact_angular, true);
}

double ball_fourier_transform(const SpectralParams& p, double R) {
  if (!(R > 0.0)) throw DomainError("radius must be positive");
  const int n = p.n();
  const CovarianceTable table(p, R);
  auto g = [&](double s) { return int_power(std::sinh(s), n - 1) * table(std::min(s, R)); };
  const PanelAntiderivative G(g, 0.0, R, panel_width(p, 1));
  return omega(n - 1) * G.total();
}

BallFourier ball_fourier(const SpectralParams& p, double R) {
  BallFourier out{ball_fourier_transform(p, R), std::numeric_limits<double>::quiet_NaN(), false};
  if (std::abs(out.f_R) > 1e-10) {
    out.ratio = variance_Cq(p, R, 1).value / (out.f_R * out.f_R);
    out.ratio_valid = true;
  }
  return out;
}

McEstimate contraction_mc(const SpectralParams& p, double R, int pexp, int qexp, long long samples,
                          std::uint64_t seed, const Executor& executor) {
  if (samples < 2) throw DomainError("contraction_mc needs at least 2 samples");
  if (pexp < 0 || qexp < 0) throw DomainError("exponents must be nonnegative");
  const double m = ball_volume(p.n(), R);
  const BallSampler sampler(p.n(), R);
  const CovarianceTable table(p, 2.0 * R * (1.0 + 1e-9));
  constexpr int chunks = 64;
  std::vector<double> sum(chunks, 0.0), sum2(chunks, 0.0);
  std::vector<long long> count(chunks, 0);
  auto dist = [](const HyperPoint& x, const HyperPoint& y) { return distance(x, y); };
  run_indexed(executor, chunks, [&](std::size_t c) {
    long long lo = samples * static_cast<long long>(c) / chunks;
    long long hi = samples * static_cast<long long>(c + 1) / chunks;
    Stream stream(seed, c);
    NeumaierSum s, s2;
    for (long long i = lo; i < hi; ++i) {
      HyperPoint x = sampler.sample(stream), y = sampler.sample(stream), z = sampler.sample(stream),
                 w = sampler.sample(stream);
      double a1 = table(dist(x, y)), b1 = table(dist(y, z)), a2 = table(dist(z, w)), b2 = table(dist(w, x));
      double v = std::pow(a1 * a2, pexp) * std::pow(b1 * b2, qexp);
      s.add(v);
      s2.add(v * v);
    }
    sum[c] = s.value();
    sum2[c] = s2.value();
    count[c] = hi - lo;
  });
  double total = 0.0, total2 = 0.0;
  for (int c = 0; c < chunks; ++c) {
    total += sum[c];
    total2 += sum2[c];
  }
  const double N = static_cast<double>(samples);
  double mean = total / N;
  double var = std::max(0.0, (total2 / N - mean * mean) * N / (N - 1.0));
  double m4 = m * m * m * m;
  return {m4 * mean, m4 * std::sqrt(var / N)};
}

double leray_second_moment(const SpectralParams& p, double R) {
  const CovarianceTable table(p, 2.0 * R * (1.0 + 1e-9));
  auto f = [&](double s) {
    s = std::min(s, table.r_max());
    double om = table.one_minus(s);
    double gap = om * (2.0 - om);  // 1 - F^2
    if (s > 1e-8 && gap <= 1e-14) throw Error(ErrorCode::accuracy, "F^2 reached 1 away from the origin");
    if (s == 0.0) {
      return 0.0;
    }
    return 1.0 / (2.0 * std::numbers::pi * std::sqrt(gap));
  };
  return radial_double_integral(p.n(), R, f, std::min(0.05, 1.5 / p.alpha())).value;
}

double euclid_variance(int n, double lambda, double R, int q) {
  if (n < 2 || !(lambda > 0.0) || !(R > 0.0) || q < 0) throw DomainError("euclid_variance: invalid arguments");
  const double vn = std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
  const double wo = omega(n - 1);
  auto overlap = [&](double s) {
    if (s >= 2.0 * R) return 0.0;
    if (n == 2) return 2.0 * R * R * std::acos(s / (2.0 * R)) - 0.5 * s * std::sqrt(4.0 * R * R - s * s);
    return vn * std::pow(R, n) * boost::math::ibeta(0.5 * (n + 1), 0.5, 1.0 - s * s / (4.0 * R * R));
  };
  auto g = [&](double s) {
    return wo * std::pow(s, n - 1) * overlap(s) * std::pow(berry_covariance(n, lambda, s), q);
  };
  const double top = 2.0 * R;
  const double width = q == 0 ? top : std::min(1.0, std::numbers::pi / (q * std::sqrt(lambda)));
  const int panels = std::max(1, static_cast<int>(std::ceil(top / width)));
  NeumaierSum acc;
  for (int k = 0; k < panels; ++k) acc.add(integrate(g, top * k / panels, top * (k + 1) / panels, 1e-10, 12).value);
  return factorial(q) * acc.value();
}

ScalingFit scaling_fit(std::vector<std::pair<double, double>> grid, FitHypothesis hypothesis, double slope0,
                       bool use_slope0) {
  if (grid.size() < 5) throw DomainError("scaling_fit needs at least 5 grid points");
  std::sort(grid.begin(), grid.end());
  std::vector<double> lx, ly;
  for (auto& [x, y] : grid) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("scaling_fit needs positive parameters and values");
    if (hypothesis == FitHypothesis::power_with_log && !(x > 1.0))
      throw DomainError("power_with_log needs parameters above 1");
    lx.push_back(std::log(x));
    ly.push_back(hypothesis == FitHypothesis::pure_power ? std::log(y) : std::log(y / std::log(x)));
  }
  LineFit lf = least_squares_line(lx, ly);
  ScalingFit out{grid, lf.slope, lf.intercept, 0.0, std::numeric_limits<double>::quiet_NaN()};
  if (hypothesis == FitHypothesis::power_with_log && use_slope0) {
    // slope pinned: y x^{-slope0} = a log x + b, so the log may carry an additive constant
    std::vector<double> scaled;
    for (auto& [x, y] : grid) scaled.push_back(y * std::pow(x, -slope0));
    const LineFit ab = least_squares_line(lx, scaled);
    out.slope = slope0;
    out.intercept = ab.intercept;
    for (auto& [x, y] : grid) {
      const double model = std::pow(x, slope0) * (ab.slope * std::log(x) + ab.intercept);
      out.max_rel_residual = std::max(out.max_rel_residual, std::abs(y - model) / y);
    }
  } else {
    for (auto& [x, y] : grid) {
      double model = std::exp(lf.intercept) * std::pow(x, lf.slope);
      if (hypothesis == FitHypothesis::power_with_log) model *= std::log(x);
      out.max_rel_residual = std::max(out.max_rel_residual, std::abs(y - model) / y);
    }
  }
  if (hypothesis == FitHypothesis::power_with_log) {
    double s0 = use_slope0 ? slope0 : lf.slope;
    double xmax = grid.back().first;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (auto& [x, y] : grid) {
      if (x < xmax / 10.0 * (1.0 - 1e-12)) continue;
      double v = y * std::pow(x, -s0) / std::log(x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    out.log_correction_ratio_drift = hi / lo;
  }
  return out;
}

}  // namespace hyperwave
