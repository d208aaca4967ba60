#include "reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "chaos.hpp"
#include "covtable.hpp"
#include "errors.hpp"
#include "hypgeo.hpp"
#include "moments.hpp"
#include "numeric.hpp"
#include "rng.hpp"
#include "specfun.hpp"
#include "stats.hpp"
#include "waves.hpp"

namespace hyperwave {

namespace {

struct Profile {
  bool desk;
  std::vector<int> c1_n;
  std::vector<double> c1_alpha;
  int c1_points;
  int c4_points;
  long long c7_samples;
  int c8_K, c8_M;
  int c10_K, c10_M;
  int c11_K, c11_M;
  int c12_grid;
};

Profile make_profile(const std::string& name) {
  if (name == "desk") return {true, {2, 3, 4}, {1, 5, 20, 50}, 60, 12, 1000000, 2000, 2000, 1000, 1000, 1000, 2000, 21};
  if (name == "quick") return {false, {2, 3}, {1, 20}, 12, 5, 50000, 200, 300, 200, 300, 200, 300, 9};
  throw Error(ErrorCode::config, "unknown profile '" + name + "' (expected desk or quick)");
}

class Detail {
 public:
  Detail& add(const std::string& key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return add(key, std::string(buf));
  }
  Detail& add(const std::string& key, const std::string& v) {
    if (!first_) os_ << ';';
    first_ = false;
    os_ << key << '=' << v;
    return *this;
  }
  Detail& flag(const std::string& key, bool v) { return add(key, std::string(v ? "1" : "0")); }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  bool first_ = true;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double band(const std::vector<double>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return least_squares_line(lx, ly).slope;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  char buf[32];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.4g", v[i]);
    if (i) s += '/';
    s += buf;
  }
  return s;
}

double route_gap(double a, double b, double env) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), env});
}

struct MomentsSummary {
  double mean, se, var;
};

MomentsSummary summarize(const std::vector<FunctionalSample>& s) {
  NeumaierSum acc;
  for (const auto& x : s) acc.add(x.estimate);
  const double K = static_cast<double>(s.size());
  const double mean = acc.value() / K;
  NeumaierSum v;
  for (const auto& x : s) v.add((x.estimate - mean) * (x.estimate - mean));
  const double var = v.value() / (K - 1.0);
  return {mean, std::sqrt(var / K), var};
}

double mean_noise(const std::vector<FunctionalSample>& s) {
  NeumaierSum acc;
  for (const auto& x : s) acc.add(x.spatial_noise_var);
  return acc.value() / static_cast<double>(s.size());
}

CriterionResult c1_routes(const Profile& pf) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0, worst_res = 0.0;
  bool degraded = false;
  for (int n : pf.c1_n) {
    for (double alpha : pf.c1_alpha) {
      const SpectralParams p(n, alpha);
      const double lam = p.lambda();
      const auto radii = log_space(1e-3, 6.0, pf.c1_points);
      const auto ode = spherical_F_ode_path(p, radii);
      for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        const FValue hg = spherical_F(p, r, Route::hypergeometric);
        const FValue qd = spherical_F(p, r, Route::quadrature);
        degraded = degraded || hg.degraded || qd.degraded;
        const double env = F_envelope(p, r);
        worst = std::max({worst, route_gap(ode[i].f, hg.value, env), route_gap(ode[i].f, qd.value, env),
                          route_gap(hg.value, qd.value, env)});
        const double h = std::min(0.01 / std::sqrt(lam), 0.25 * r);
        const double fm = spherical_F_quadrature(p, r - h), fp = spherical_F_quadrature(p, r + h);
        const double d2 = (fp - 2.0 * qd.value + fm) / (h * h), d1 = (fp - fm) / (2.0 * h);
        const double res = std::abs(d2 + 2.0 * p.sigma() / std::tanh(r) * d1 + lam * qd.value);
        worst_res = std::max(worst_res, res / lam);
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = worst <= 1e-6 && worst_res < 1e-4 && secs < 60.0;
  Detail d;
  d.add("max_route_gap", worst).add("max_residual_over_lambda", worst_res).flag("runtime_under_60s", secs < 60.0).flag(
      "degraded", degraded);
  return {1, "covariance cross-validation", pass, d.str()};
}

CriterionResult c2_uniform(const Profile& pf) {
  double worst_ratio = 1.0, overall = 0.0;
  bool finite = true;
  for (int n : pf.c1_n) {
    for (double alpha : pf.c1_alpha) {
      const SpectralParams p(n, alpha);
      auto scan = [&](int count) {
        double mx = 0.0;
        for (const auto& s : spherical_F_ode_path(p, lin_space(1e-3, 6.0, count)))
          mx = std::max(mx, std::abs(s.f) * std::exp(p.sigma() * s.r));
        return mx;
      };
      const double coarse = scan(pf.c1_points), fine = scan(10 * pf.c1_points);
      finite = finite && std::isfinite(coarse) && std::isfinite(fine);
      worst_ratio = std::max({worst_ratio, coarse / fine, fine / coarse});
      overall = std::max(overall, fine);
    }
  }
  Detail d;
  d.add("max_F_exp_sigma_r", overall).add("worst_coarse_fine_ratio", worst_ratio).flag("finite", finite);
  return {2, "uniform exponential bound", finite && worst_ratio < 1.01, d.str()};
}

CriterionResult c3_tail() {
  std::vector<double> r_hold, a_hold;
  for (int i = 0; i < 50; ++i) r_hold.push_back(1.05 + 0.1 * i);
  const auto a_cal = log_space(5.0, 50.0, 21);
  for (std::size_t i = 0; i + 1 < a_cal.size(); ++i) a_hold.push_back(std::sqrt(a_cal[i] * a_cal[i + 1]));
  int violations = 0, checked = 0;
  double worst = 0.0;
  Detail d;
  for (int n : {2, 3}) {
    d.add("K_" + std::to_string(n), tail_constant(n));
    for (double alpha : a_hold) {
      const SpectralParams p(n, alpha);
      for (double r : r_hold) {
        const AsymptoticBand b = asymptotic_tail(p, r);
        const FValue f = spherical_F(p, r, Route::automatic);
        const double gap = std::abs(f.value - b.main_term);
        const double allowed = b.error_bound + f.error;  // the evaluation of F carries its own error
        worst = std::max(worst, gap / allowed);
        ++checked;
        if (gap > allowed) ++violations;
      }
    }
  }
  d.add("holdout_points", checked).add("violations", violations).add("max_gap_over_bound", worst);
  return {3, "asymptotic tail certificate", violations == 0, d.str()};
}

CriterionResult c4_lambda_table(const Profile& pf) {
  const double R = 2.0;
  const auto alphas = log_space(10.0, 100.0, pf.c4_points);
  Detail d;
  bool pass = true;
  for (int n : {2, 3}) {
    std::vector<double> lam, v2, v6;
    for (double a : alphas) {
      const SpectralParams p(n, a);
      lam.push_back(p.lambda());
      v2.push_back(variance_Cq(p, R, 2).value);
      v6.push_back(variance_Cq(p, R, 6).value);
    }
    const double sigma = 0.5 * (n - 1);
    const double s2 = log_slope(lam, v2), s6 = log_slope(lam, v6);
    pass = pass && std::abs(s2 + sigma) <= 0.05 && std::abs(s6 + sigma + 0.5) <= 0.1;
    d.add("n" + std::to_string(n) + "_q2_slope", s2).add("n" + std::to_string(n) + "_q6_slope", s6);
  }
  std::vector<std::pair<double, double>> grid;
  for (double a : alphas) {
    const SpectralParams p(2, a);
    grid.emplace_back(p.lambda(), variance_Cq(p, R, 4).value);
  }
  const ScalingFit pure = scaling_fit(grid, FitHypothesis::pure_power);
  const ScalingFit logfit = scaling_fit(grid, FitHypothesis::power_with_log, -1.0, true);
  const double drift_pct = logfit.log_correction_ratio_drift - 1.0;
  pass = pass && drift_pct < 0.2 && pure.max_rel_residual > logfit.max_rel_residual;
  d.add("n2_q4_log_drift", drift_pct)
      .add("n2_q4_pure_residual", pure.max_rel_residual)
      .add("n2_q4_log_residual", logfit.max_rel_residual)
      .add("n2_q4_pure_slope", pure.slope);
  return {4, "lambda-regime variance table", pass, d.str()};
}

CriterionResult c5_radius_table() {
  Detail d;
  bool pass = true;
  for (int n : {2, 3}) {
    const SpectralParams p(n, 2.0);
    std::vector<double> b2, b4, b6;
    for (int R = 3; R <= 8; ++R) {
      const double m = ball_volume(n, R);
      b2.push_back(variance_Cq(p, R, 2).value / (R * m));
      b4.push_back(variance_Cq(p, R, 4).value / m);
      b6.push_back(variance_Cq(p, R, 6).value / m);
    }
    const std::string k = "n" + std::to_string(n);
    d.add(k + "_q2_band", band(b2)).add(k + "_q4_band", band(b4)).add(k + "_q6_band", band(b6));
    d.add(k + "_q2_over_Rm", join(b2));
    pass = pass && band(b2) < 2.0 && band(b4) < 2.0 && band(b6) < 2.0;
  }
  return {5, "radius-regime variance table", pass, d.str()};
}

CriterionResult c6_discrepancy() {
  const SpectralParams p(2, 2.0);
  std::vector<double> hyp, euc;
  for (int R = 3; R <= 8; ++R) hyp.push_back(variance_Cq(p, R, 4).value / ball_volume(2, R));
  for (double R : {5.0, 10.0, 20.0, 40.0})
    euc.push_back(euclid_variance(2, 4.0, R, 4) / (std::numbers::pi * R * R));
  const double hyp_drift = band(hyp), euc_growth = euc.back() / euc.front();
  Detail d;
  d.add("hyperbolic_drift", hyp_drift).add("euclidean_growth", euc_growth).add("euclidean_ratios", join(euc));
  return {6, "hyperbolic-euclidean q=4 discrepancy", hyp_drift < 2.0 && euc_growth > 1.5, d.str()};
}

CriterionResult c7_contractions(const Profile& pf, std::uint64_t seed, const Executor& ex) {
  const double sigma = 0.5;
  std::vector<double> lam, xl, radii, xr;
  int tag = 0;
  for (double a : {5.0, 10.0, 20.0, 40.0}) {
    const SpectralParams p(2, a);
    const McEstimate c = contraction_mc(p, 2.0, 1, 1, pf.c7_samples, mix_seed(seed, 700 + tag++), ex);
    const double v = variance_Cq(p, 2.0, 2).value;
    lam.push_back(p.lambda());
    xl.push_back(c.value / (v * v));
  }
  for (double R : {2.0, 3.0, 4.0, 5.0}) {
    const SpectralParams p(2, 2.0);
    const McEstimate c = contraction_mc(p, R, 1, 1, pf.c7_samples, mix_seed(seed, 700 + tag++), ex);
    const double v = variance_Cq(p, R, 2).value;
    radii.push_back(R);
    xr.push_back(c.value / (v * v));
  }
  bool positive = true;
  for (double x : xl) positive = positive && x > 0.0;
  for (double x : xr) positive = positive && x > 0.0;
  Detail d;
  bool pass = positive;
  if (positive) {
    const double sl = log_slope(lam, xl), sr = log_slope(radii, xr);
    d.add("lambda_slope", sl).add("target_lambda_slope", -(sigma + 2.0)).add("R_slope", sr);
    pass = std::abs(sl + sigma + 2.0) <= 0.4 && std::abs(sr + 1.0) <= 0.4;
  }
  d.add("X_lambda", join(xl)).add("X_R", join(xr));
  return {7, "contraction decay", pass, d.str()};
}

CriterionResult c8_clt(const Profile& pf, std::uint64_t seed, const Executor& ex) {
  std::vector<double> wa, wr;
  int tag = 0;
  for (double a : {10.0, 30.0, 100.0})
    wa.push_back(clt_report(SpectralParams(2, a), 2.0, 2, pf.c8_M, pf.c8_K, mix_seed(seed, 800 + tag++), ex).w1_to_gaussian);
  for (double R : {3.0, 5.0, 7.0})
    wr.push_back(clt_report(SpectralParams(2, 2.0), R, 2, pf.c8_M, pf.c8_K, mix_seed(seed, 800 + tag++), ex).w1_to_gaussian);
  const bool pass = strictly_decreasing(wa) && strictly_decreasing(wr) && wa.back() < 0.08 && wr.back() < 0.08;
  Detail d;
  d.add("w1_alpha_10_30_100", join(wa)).add("w1_R_3_5_7", join(wr));
  return {8, "polyspectrum CLT", pass, d.str()};
}

CriterionResult c9_fourier() {
  const double R = 2.0;
  std::vector<double> ratios;
  for (double a : {5.0, 10.0, 20.0, 40.0}) {
    const BallFourier bf = ball_fourier(SpectralParams(2, a), R);
    if (bf.ratio_valid) ratios.push_back(bf.ratio);
  }
  int zeros = 0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (double a : lin_space(1.0, 50.0, 491)) {
    const double f = ball_fourier_transform(SpectralParams(2, a), R);
    if (std::isfinite(prev) && f * prev < 0.0) ++zeros;
    if (f != 0.0) prev = f;
  }
  const double spread = ratios.size() >= 2 ? band(ratios) - 1.0 : std::numeric_limits<double>::infinity();
  Detail d;
  d.add("ratios", join(ratios)).add("spread", spread).add("zeros_on_1_50", zeros);
  return {9, "first-chaos variance via Fourier", spread < 0.01 && zeros >= 3, d.str()};
}

CriterionResult c10_leray(const Profile& pf, std::uint64_t seed, const Executor& ex) {
  const double R = 2.0;
  const SpectralParams p(2, 10.0);
  const std::vector<double> eps{0.1, 0.05, 0.025};
  const auto runs = leray_mc(p, R, eps, FieldMcConfig{pf.c10_M, pf.c10_K, mix_seed(seed, 1000)}, ex);
  const double m = ball_volume(2, R), target = m / std::sqrt(2.0 * std::numbers::pi);
  std::vector<MomentsSummary> s;
  for (const auto& r : runs) s.push_back(summarize(r));
  const double z_mean = std::abs(s[2].mean - target) / s[2].se;
  bool cauchy = true;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    cauchy = cauchy && std::abs(s[i].mean - s[i + 1].mean) < std::hypot(s[i].se, s[i + 1].se);
  // second moment at eps = 0.05, spatial noise removed
  NeumaierSum sq;
  for (const auto& x : runs[1]) sq.add(x.estimate * x.estimate);
  const double second = sq.value() / runs[1].size() - mean_noise(runs[1]);
  const double ratio = second / leray_second_moment(p, R);
  std::vector<double> I;
  for (double a : {5.0, 10.0, 20.0, 40.0}) I.push_back(2.0 * std::numbers::pi * leray_second_moment(SpectralParams(2, a), R));
  const double i_band = band(I);
  Detail d;
  d.add("mean_z", z_mean).flag("eps_cauchy", cauchy).add("means", join({s[0].mean, s[1].mean, s[2].mean}));
  d.add("second_moment_ratio", ratio).add("pair_integral_alpha_5_10_20_40", join(I)).add("pair_integral_band", i_band);
  return {10, "Leray measure", z_mean <= 4.0 && cauchy && std::abs(ratio - 1.0) <= 0.1 && i_band < 1.1, d.str()};
}

CriterionResult c11_excursion(const Profile& pf, std::uint64_t seed, const Executor& ex) {
  const double R = 2.0, t = 1.0;
  const double m = ball_volume(2, R);
  const double phi = normal_pdf(t);
  std::vector<double> ratios, zs;
  int tag = 0;
  for (double a : {10.0, 20.0}) {
    const SpectralParams p(2, a);
    const auto run = excursion_volume_mc(p, R, t, FieldMcConfig{pf.c11_M, pf.c11_K, mix_seed(seed, 1100 + tag++)}, ex);
    const MomentsSummary s = summarize(run.samples);
    zs.push_back(std::abs(s.mean - m * normal_cdf(t)) / s.se);
    const double scale = t * t * phi * phi / 4.0 * variance_Cq(p, R, 2).value;
    ratios.push_back((s.var - mean_noise(run.samples)) / scale);
  }
  const double stab = std::abs(ratios[0] / ratios[1] - 1.0);
  Detail d;
  d.add("variance_ratios", join(ratios)).add("ratio_change", stab).add("mean_z", join(zs));
  return {11, "excursion volume", stab <= 0.3 && zs[0] <= 4.0 && zs[1] <= 4.0, d.str()};
}

CriterionResult c12_local(const Profile& pf) {
  const LocalLimitResult r = local_limit_sup({1e2, 1e3, 1e4}, 2, 5.0, pf.c12_grid);
  std::vector<double> sup;
  for (const auto& row : r.rows) sup.push_back(row.sup_dev);
  Detail d;
  d.add("sup_dev_1e2_1e3_1e4", join(sup)).flag("extent_warning", r.extent_warning);
  return {12, "local Berry limit", strictly_decreasing(sup) && sup.back() < 0.05, d.str()};
}

CriterionResult c13_identities(std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  Detail d;
  auto genfun = [](int terms) {
    double worst = 0.0;
    for (double s : lin_space(-2.0, 2.0, 9))
      for (double t : lin_space(-2.0, 2.0, 9)) {
        double acc = 0.0, tq = 1.0, fact = 1.0;
        const auto h = hermite_all(terms, s);
        for (int q = 0; q <= terms; ++q) {
          if (q > 0) {
            tq *= t;
            fact *= q;
          }
          acc += h[q] * tq / fact;
        }
        worst = std::max(worst, std::abs(acc - std::exp(s * t - 0.5 * t * t)));
      }
    return worst;
  };
  const double gen12 = genfun(12), gen40 = genfun(40);
  const bool gen_ok = gen12 <= 1e-8;
  d.add("genfun_err_12_terms", gen12).add("genfun_err_40_terms", gen40);

  // products of H_9 and H_10 reach 1e7 before cancelling to 0, so the sum is carried in long double
  const ExtendedRule gh = gauss_hermite_normal_extended(60);
  double orth = 0.0;
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; b <= 10; ++b) {
      long double acc = 0.0L;
      for (std::size_t i = 0; i < gh.nodes.size(); ++i)
        acc += gh.weights[i] * hermite_extended(a, gh.nodes[i]) * hermite_extended(b, gh.nodes[i]);
      const long double expect = a == b ? std::tgamma(a + 1.0L) : 0.0L;
      orth = std::max(orth, static_cast<double>(std::abs(acc - expect)));
    }
  const bool orth_ok = orth <= 1e-9;
  d.add("orthogonality_err", orth);

  double psi_sum = 0.0, fact = 1.0;
  for (int q = 1; q <= 40; ++q) {
    fact *= q;
    psi_sum += psi_coeff(q, 1.0) * psi_coeff(q, 1.0) / fact;
  }
  const double psi_err = std::abs(psi_sum - normal_cdf(1.0) * (1.0 - normal_cdf(1.0)));
  const bool psi_ok = psi_err <= 1e-6;
  d.add("psi_sum_err", psi_err);

  double ps_err = 0.0;
  for (double x : {0.0, 0.3, 0.6, 0.9}) {
    double acc = 0.0;
    for (int l = 0; l <= 40; ++l) acc += leray_B_norm_sq(2 * l) * std::pow(x, 2 * l) * 2.0 * std::numbers::pi;
    ps_err = std::max(ps_err, std::abs(acc - 1.0 / std::sqrt(1.0 - x * x)));
  }
  const bool ps_ok = ps_err <= 1e-6;
  d.add("powerseries_err", ps_err);

  const SpectralParams p(2, 3.0);
  Stream pts_stream(seed, 1300);
  const auto points = sample_uniform_ball(2, 2.0, 20, pts_stream);
  const Eigen::MatrixXd exact = covariance_matrix(points, p);
  std::vector<double> Ns{64, 256, 1024}, dev;
  for (double N : Ns) {
    double acc = 0.0;
    constexpr int reps = 20;
    for (int k = 0; k < reps; ++k) {
      Stream st(mix_seed(seed, 1301), static_cast<std::uint64_t>(N) * 100 + k);
      acc += (superposition_covariance(points, p, static_cast<int>(N), st) - exact).cwiseAbs().maxCoeff();
    }
    dev.push_back(acc / reps);
  }
  const double sup_slope = log_slope(Ns, dev);
  const bool sup_ok = strictly_decreasing(dev) && sup_slope >= -0.7 && sup_slope <= -0.3;
  d.add("superposition_dev", join(dev)).add("superposition_slope", sup_slope);
  const double secs = seconds_since(t0);
  d.flag("runtime_under_30s", secs < 30.0);
  return {13, "identity suites", gen_ok && orth_ok && psi_ok && ps_ok && sup_ok && secs < 30.0, d.str()};
}

}  // namespace

CriterionResult run_criterion(int id, const ReproduceOptions& opt) {
  const Profile pf = make_profile(opt.profile);
  switch (id) {
    case 1: return c1_routes(pf);
    case 2: return c2_uniform(pf);
    case 3: return c3_tail();
    case 4: return c4_lambda_table(pf);
    case 5: return c5_radius_table();
    case 6: return c6_discrepancy();
    case 7: return c7_contractions(pf, opt.seed, opt.executor);
    case 8: return c8_clt(pf, opt.seed, opt.executor);
    case 9: return c9_fourier();
    case 10: return c10_leray(pf, opt.seed, opt.executor);
    case 11: return c11_excursion(pf, opt.seed, opt.executor);
    case 12: return c12_local(pf);
    case 13: return c13_identities(opt.seed);
    default: throw Error(ErrorCode::config, "criterion id must be in 1..13");
  }
}

std::vector<CriterionResult> reproduce(const ReproduceOptions& opt) {
  make_profile(opt.profile);
  std::vector<int> ids = opt.only;
  if (ids.empty())
    for (int i = 1; i <= 13; ++i) ids.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : ids) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = run_criterion(id, opt);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::config) throw;
      r = {id, "criterion " + std::to_string(id), false, std::string("error=") + e.what()};
    }
    if (opt.on_result) opt.on_result(r, seconds_since(t0));
    out.push_back(std::move(r));
  }
  return out;
}

void write_report_csv(std::ostream& os, const std::vector<CriterionResult>& rows) {
  os << "criterion,name,status,detail\n";
  for (const auto& r : rows) os << r.id << ',' << r.name << ',' << (r.pass ? "pass" : "fail") << ",\"" << r.detail << "\"\n";
}

}  // namespace hyperwave
