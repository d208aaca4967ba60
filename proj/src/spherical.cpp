#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "errors.hpp"
#include "numeric.hpp"
#include "specfun.hpp"

namespace hyperwave {

SeriesValue spherical_F_series(const SpectralParams& p, double r) {
  const double s = std::sinh(r), z = -s * s;
  const double hs = 0.5 * p.sigma(), qa = 0.25 * p.alpha() * p.alpha(), hc = 0.5 * p.n();
  double term = 1.0, tail = 0.0, dsum = 0.0;
  for (int k = 0; k < 400; ++k) {
    term *= ((hs + k) * (hs + k) + qa) / ((hc + k) * (k + 1.0)) * z;
    tail += term;
    dsum += (k + 1.0) * term;
    if (std::abs(term) < 1e-18 * std::max(std::abs(tail), 1e-300)) break;
  }
  SeriesValue v;
  v.one_minus_f = -tail;
  v.f = 1.0 + tail;
  v.df = r == 0.0 ? 0.0 : 2.0 * std::cosh(r) / s * dsum;
  return v;
}

namespace {

struct State {
  double f, g;
};

struct Rhs {
  double two_sigma, lambda;
  State operator()(double r, State y) const {
    return {y.g, -two_sigma * (std::cosh(r) / std::sinh(r)) * y.g - lambda * y.f};
  }
};

}  // namespace

std::vector<OdeSample> spherical_F_ode_path(const SpectralParams& p, const std::vector<double>& radii,
                                            const OdeOptions& opt) {
  std::vector<OdeSample> out;
  out.reserve(radii.size());
  const Rhs rhs{2.0 * p.sigma(), p.lambda()};
  const double sl = std::sqrt(p.lambda());
  // Dormand-Prince 5(4)
  constexpr double a21 = 1.0 / 5, a31 = 3.0 / 40, a32 = 9.0 / 40, a41 = 44.0 / 45, a42 = -56.0 / 15,
                   a43 = 32.0 / 9, a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729, a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656, b1 = 35.0 / 384, b3 = 500.0 / 1113,
                   b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84, e1 = 71.0 / 57600,
                   e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                   e7 = -1.0 / 40;
  double r = opt.r0;
  SeriesValue s0 = spherical_F_series(p, r);
  State y{s0.f, s0.df};
  double h = std::min(0.01, 0.1 / sl);
  State k1 = rhs(r, y);
  for (double target : radii) {
    if (target < 0.0) throw DomainError("radius must be nonnegative");
    if (target <= opt.r0) {
      if (target == 0.0) {
        out.push_back({0.0, 1.0, 0.0});
      } else {
        SeriesValue sv = spherical_F_series(p, target);
        out.push_back({target, sv.f, sv.df});
      }
      continue;
    }
    if (target < r) throw DomainError("radii must be increasing");
    while (r < target) {
      bool last = false;
      double step = h;
      if (r + step >= target) {
        step = target - r;
        last = true;
      }
      auto add = [&](State base, std::initializer_list<std::pair<double, State>> ks) {
        State o = base;
        for (auto& [c, k] : ks) {
          o.f += step * c * k.f;
          o.g += step * c * k.g;
        }
        return o;
      };
      State k2 = rhs(r + step / 5, add(y, {{a21, k1}}));
      State k3 = rhs(r + 3 * step / 10, add(y, {{a31, k1}, {a32, k2}}));
      State k4 = rhs(r + 4 * step / 5, add(y, {{a41, k1}, {a42, k2}, {a43, k3}}));
      State k5 = rhs(r + 8 * step / 9, add(y, {{a51, k1}, {a52, k2}, {a53, k3}, {a54, k4}}));
      State k6 = rhs(r + step, add(y, {{a61, k1}, {a62, k2}, {a63, k3}, {a64, k4}, {a65, k5}}));
      State yn = add(y, {{b1, k1}, {b3, k3}, {b4, k4}, {b5, k5}, {b6, k6}});
      State k7 = rhs(r + step, yn);
      double ef = step * (e1 * k1.f + e3 * k3.f + e4 * k4.f + e5 * k5.f + e6 * k6.f + e7 * k7.f);
      double eg = step * (e1 * k1.g + e3 * k3.g + e4 * k4.g + e5 * k5.g + e6 * k6.g + e7 * k7.g);
      double env = std::max(std::hypot(y.f, y.g / sl), std::hypot(yn.f, yn.g / sl));
      double scale = opt.rtol * env + 1e-300;
      double err = std::max(std::abs(ef) / scale, std::abs(eg) / (sl * scale));
      if (err <= 1.0) {
        r = last ? target : r + step;
        y = yn;
        k1 = k7;
      }
      double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (!(last && err <= 1.0)) h = step * factor;
      if (h < 1e-14) throw Error(ErrorCode::accuracy, "ODE step size underflow");
    }
    out.push_back({target, y.f, y.g});
  }
  return out;
}

double spherical_F_quadrature(const SpectralParams& p, double r, double* error) {
  if (r == 0.0) {
    if (error) *error = 0.0;
    return 1.0;
  }
  const int n = p.n();
  const double sigma = p.sigma(), alpha = p.alpha();
  const double sh = std::sinh(r), er = std::exp(-r);
  auto integrand = [&](double theta, double& modulus) {
    double sh2 = std::sin(0.5 * theta);
    double base = er + 2.0 * sh * sh2 * sh2;  // cosh r - sinh r cos theta
    double lb = std::log(base);
    double w = n == 2 ? 1.0 : std::pow(std::sin(theta), n - 2);
    double m = std::exp(-sigma * lb) * w;
    modulus = m;
    return m * std::cos(alpha * lb);
  };
  // panel breakpoints uniform in psi = log(base): phase alpha*dpsi <= pi/2, dpsi <= 0.5
  double span = 2.0 * r;
  int panels = std::max(1, static_cast<int>(std::ceil(std::max(span * alpha / (0.5 * std::numbers::pi), span / 0.5))));
  std::vector<double> bp(panels + 1);
  bp[0] = 0.0;
  bp[panels] = std::numbers::pi;
  for (int k = 1; k < panels; ++k) {
    double psi = -r + span * k / panels;
    // 2 sinh r sin^2(theta/2) = e^psi - e^-r
    double s2 = (std::exp(psi) - er) / (2.0 * sh);
    bp[k] = 2.0 * std::asin(std::sqrt(std::clamp(s2, 0.0, 1.0)));
  }
  auto rule_sum = [&](int m, double& absint) {
    const auto& gl = gauss_legendre(m);
    NeumaierSum total;
    absint = 0.0;
    for (int k = 0; k < panels; ++k) {
      double mid = 0.5 * (bp[k] + bp[k + 1]), half = 0.5 * (bp[k + 1] - bp[k]);
      double ps = 0.0;
      for (int i = 0; i < m; ++i) {
        double mod;
        ps += gl.weights[i] * integrand(mid + half * gl.nodes[i], mod);
        absint += gl.weights[i] * mod * half;
      }
      total.add(ps * half);
    }
    return total.value();
  };
  const double norm = omega(n - 2) / omega(n - 1);
  double absint = 0.0;
  double prev = rule_sum(16, absint);
  double diff = 0.0;
  for (int m = 32; m <= 256; m *= 2) {
    double cur = rule_sum(m, absint);
    diff = std::abs(cur - prev);
    prev = cur;
    if (diff < 1e-13 * absint) break;
  }
  if (error) *error = norm * std::max(diff, 1e-16 * absint);
  return norm * prev;
}

namespace {

FValue hyp_route(const SpectralParams& p, double r) {
  const double s = p.sigma(), a = p.alpha(), sh = std::sinh(r);
  Hyp2f1Result h = hyp2f1(cplx(0.5 * s, 0.5 * a), cplx(0.5 * s, -0.5 * a), cplx(0.5 * p.n(), 0.0), -sh * sh);
  return {h.value.real(), h.error, h.degraded};
}

FValue ode_route(const SpectralParams& p, double r) {
  auto path = spherical_F_ode_path(p, {r});
  return {path[0].f, 1e-10 * F_envelope(p, r), false};
}

}  // namespace

FValue spherical_F(const SpectralParams& p, double r, Route route) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("spherical_F needs finite r >= 0");
  if (r == 0.0) return {1.0, 0.0, false};
  switch (route) {
    case Route::ode:
      return ode_route(p, r);
    case Route::quadrature: {
      double err = 0.0;
      double v = spherical_F_quadrature(p, r, &err);
      return {v, err, err > 1e-8 * F_envelope(p, r)};
    }
    case Route::hypergeometric:
      return hyp_route(p, r);
    case Route::automatic: {
      double t = std::tanh(r);
      if (t * t <= kPfaffThreshold) {
        FValue v = hyp_route(p, r);
        if (!v.degraded) return v;
      }
      return ode_route(p, r);
    }
  }
  return ode_route(p, r);
}

double spherical_F(const SpectralParams& p, double r) { return spherical_F(p, r, Route::automatic).value; }

cplx harish_chandra_c(const SpectralParams& p) {
  const double s = p.sigma(), a = p.alpha();
  cplx l = (2.0 * s - 1.0) * std::log(2.0) + log_gamma_complex(cplx(0.0, a)) +
           log_gamma_complex(cplx(s + 0.5, 0.0)) - 0.5 * std::log(std::numbers::pi) -
           log_gamma_complex(cplx(s, a));
  return std::exp(l);
}

double spectral_density(const SpectralParams& p) {
  double c = std::abs(harish_chandra_c(p));
  double w = omega(p.n() - 1);
  return std::pow(2.0, p.n() - 2) / (w * w * c * c);
}

double F_envelope(const SpectralParams& p, double r) {
  if (r <= 0.0) return 1.0;
  double amp = std::pow(2.0, 1.0 - p.sigma()) * std::abs(harish_chandra_c(p)) * std::pow(std::sinh(r), -p.sigma());
  return std::min(1.0, amp);
}

double tail_main_term(const SpectralParams& p, double r) {
  const double s = p.sigma();
  cplx c = std::pow(2.0, 1.0 - s) * harish_chandra_c(p);
  cplx phase = std::exp(cplx(0.0, p.alpha() * r));
  return std::pow(std::sinh(r), -s) * (c * phase).real();
}

double calibrate_tail_constant(int n, const std::vector<double>& alphas, const std::vector<double>& radii) {
  double worst = 0.0;
  for (double a : alphas) {
    SpectralParams p(n, a);
    for (double r : radii) {
      double f = spherical_F(p, r, Route::hypergeometric).value;
      double scaled = std::abs(f - tail_main_term(p, r)) * a * a * std::pow(std::sinh(r), 2.0 + p.sigma());
      worst = std::max(worst, scaled);
    }
  }
  return std::max(1.5 * worst, 1e-4);
}

double tail_constant(int n) {
  static std::map<int, double> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  double k = calibrate_tail_constant(n, log_space(5.0, 50.0, 21), lin_space(1.0, 6.0, 51));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, k).first->second;
}

AsymptoticBand asymptotic_tail(const SpectralParams& p, double r) {
  if (!(r > 0.0)) throw DomainError("asymptotic_tail needs r > 0");
  double a = p.alpha();
  double bound = tail_constant(p.n()) / (a * a) * std::pow(std::sinh(r), -2.0 - p.sigma());
  return {tail_main_term(p, r), bound};
}

double bessel_approx(const SpectralParams& p, double r) {
  const int n = p.n();
  const double nu = 0.5 * n - 1.0, a = p.alpha();
  const double pref = std::pow(2.0 * std::numbers::pi, 0.5 * n) / omega(n - 1);
  double ratio = r == 0.0 ? 1.0 : r / std::sinh(r);
  double phase = std::pow(cplx(a, 0.5), -nu).real();
  return pref * std::sqrt(ratio) * phase * std::pow(a * ratio, nu) * bessel_j_scaled(nu, a * r);
}

double berry_covariance(int n, double lambda, double s) {
  if (n < 1 || !(lambda > 0.0) || !(s >= 0.0)) throw DomainError("berry_covariance needs n >= 1, lambda > 0, s >= 0");
  if (s == 0.0) return 1.0;
  const double nu = 0.5 * n - 1.0;
  const double pref = std::pow(2.0 * std::numbers::pi, 0.5 * n) / omega(n - 1);
  return pref * bessel_j_scaled(nu, std::sqrt(lambda) * s);
}

}  // namespace hyperwave
