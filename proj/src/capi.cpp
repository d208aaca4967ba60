#include "hyperwave/hyperwave.h"

#include <exception>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "chaos.hpp"
#include "covtable.hpp"
#include "errors.hpp"
#include "hypgeo.hpp"
#include "moments.hpp"
#include "reproduce.hpp"
#include "rng.hpp"
#include "specfun.hpp"
#include "stats.hpp"
#include "waves.hpp"

struct hw_params {
  hyperwave::SpectralParams p;
};

struct hw_covtable {
  hyperwave::CovarianceTable t;
};

namespace {

thread_local std::string last_error;

hw_status map_code(hyperwave::ErrorCode c) {
  switch (c) {
    case hyperwave::ErrorCode::domain: return HW_ERR_DOMAIN;
    case hyperwave::ErrorCode::invalid_point: return HW_ERR_INVALID_POINT;
    case hyperwave::ErrorCode::pole: return HW_ERR_POLE;
    case hyperwave::ErrorCode::ill_conditioned: return HW_ERR_ILL_CONDITIONED;
    case hyperwave::ErrorCode::accuracy: return HW_ERR_ACCURACY;
    case hyperwave::ErrorCode::config: return HW_ERR_CONFIG;
  }
  return HW_ERR_INTERNAL;
}

template <class F>
hw_status guard(F&& f) {
  last_error.clear();
  try {
    f();
    return HW_OK;
  } catch (const hyperwave::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return HW_ERR_INTERNAL;
  }
}

hw_status null_arg(const char* name) {
  last_error = std::string("null argument: ") + name;
  return HW_ERR_NULL_ARGUMENT;
}

#define HW_REQUIRE(ptr)                  \
  do {                                   \
    if ((ptr) == nullptr) return null_arg(#ptr); \
  } while (0)

hyperwave::Executor adapt(const hw_executor* ex) {
  if (ex == nullptr || ex->run == nullptr) return {};
  hw_executor copy = *ex;
  return [copy](std::size_t count, const std::function<void(std::size_t)>& task) {
    struct Ctx {
      const std::function<void(std::size_t)>* task;
      std::mutex mu;
      std::exception_ptr error;
    } ctx{&task, {}, nullptr};
    auto trampoline = [](size_t i, void* raw) {
      auto* c = static_cast<Ctx*>(raw);
      try {
        (*c->task)(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(c->mu);
        if (!c->error) c->error = std::current_exception();
      }
    };
    copy.run(count, trampoline, &ctx, copy.user);
    if (ctx.error) std::rethrow_exception(ctx.error);
  };
}

std::vector<hyperwave::HyperPoint> read_points(int n, const double* coords, size_t count) {
  std::vector<hyperwave::HyperPoint> pts;
  pts.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(coords + i * (n + 1), n + 1);
    pts.push_back(hyperwave::HyperPoint::from_ambient(x));
  }
  return pts;
}

}  // namespace

extern "C" {

const char* hw_last_error(void) { return last_error.c_str(); }

const char* hw_version(void) { return "0.1.0"; }

hw_status hw_params_create(int n, double alpha, hw_params** out) {
  HW_REQUIRE(out);
  return guard([&] { *out = new hw_params{hyperwave::SpectralParams(n, alpha)}; });
}

hw_status hw_params_from_lambda(int n, double lambda, hw_params** out) {
  HW_REQUIRE(out);
  return guard([&] { *out = new hw_params{hyperwave::SpectralParams::from_lambda(n, lambda)}; });
}

void hw_params_destroy(hw_params* p) { delete p; }

hw_status hw_params_get(const hw_params* p, int* n, double* alpha, double* sigma, double* lambda) {
  HW_REQUIRE(p);
  if (n) *n = p->p.n();
  if (alpha) *alpha = p->p.alpha();
  if (sigma) *sigma = p->p.sigma();
  if (lambda) *lambda = p->p.lambda();
  return HW_OK;
}

hw_status hw_spherical_F(const hw_params* p, double r, hw_route route, double* value, double* error, int* degraded) {
  HW_REQUIRE(p);
  HW_REQUIRE(value);
  return guard([&] {
    hyperwave::Route rt = hyperwave::Route::automatic;
    switch (route) {
      case HW_ROUTE_ODE: rt = hyperwave::Route::ode; break;
      case HW_ROUTE_QUADRATURE: rt = hyperwave::Route::quadrature; break;
      case HW_ROUTE_HYPERGEOMETRIC: rt = hyperwave::Route::hypergeometric; break;
      case HW_ROUTE_AUTO: rt = hyperwave::Route::automatic; break;
      default: throw hyperwave::DomainError("unknown route");
    }
    const hyperwave::FValue v = hyperwave::spherical_F(p->p, r, rt);
    *value = v.value;
    if (error) *error = v.error;
    if (degraded) *degraded = v.degraded ? 1 : 0;
  });
}

hw_status hw_asymptotic_tail(const hw_params* p, double r, double* main_term, double* error_bound) {
  HW_REQUIRE(p);
  HW_REQUIRE(main_term);
  HW_REQUIRE(error_bound);
  return guard([&] {
    const auto b = hyperwave::asymptotic_tail(p->p, r);
    *main_term = b.main_term;
    *error_bound = b.error_bound;
  });
}

hw_status hw_harish_chandra_c(const hw_params* p, double* re, double* im) {
  HW_REQUIRE(p);
  HW_REQUIRE(re);
  HW_REQUIRE(im);
  return guard([&] {
    const auto c = hyperwave::harish_chandra_c(p->p);
    *re = c.real();
    *im = c.imag();
  });
}

hw_status hw_spectral_density(const hw_params* p, double* out) {
  HW_REQUIRE(p);
  HW_REQUIRE(out);
  return guard([&] { *out = hyperwave::spectral_density(p->p); });
}

hw_status hw_bessel_approx(const hw_params* p, double r, double* out) {
  HW_REQUIRE(p);
  HW_REQUIRE(out);
  return guard([&] { *out = hyperwave::bessel_approx(p->p, r); });
}

hw_status hw_berry_covariance(int n, double lambda, double s, double* out) {
  HW_REQUIRE(out);
  return guard([&] { *out = hyperwave::berry_covariance(n, lambda, s); });
}

hw_status hw_ball_volume(int n, double R, double* out) {
  HW_REQUIRE(out);
  return guard([&] { *out = hyperwave::ball_volume(n, R); });
}

hw_status hw_distance(int n, const double* x, const double* y, double* out) {
  HW_REQUIRE(x);
  HW_REQUIRE(y);
  HW_REQUIRE(out);
  return guard([&] {
    if (n < 1) throw hyperwave::DomainError("dimension must be positive");
    auto a = hyperwave::HyperPoint::from_ambient(Eigen::Map<const Eigen::VectorXd>(x, n + 1));
    auto b = hyperwave::HyperPoint::from_ambient(Eigen::Map<const Eigen::VectorXd>(y, n + 1));
    *out = hyperwave::distance(a, b);
  });
}

hw_status hw_covtable_create(const hw_params* p, double r_max, hw_covtable** out) {
  HW_REQUIRE(p);
  HW_REQUIRE(out);
  return guard([&] { *out = new hw_covtable{hyperwave::CovarianceTable(p->p, r_max)}; });
}

void hw_covtable_destroy(hw_covtable* t) { delete t; }

hw_status hw_covtable_eval(const hw_covtable* t, double r, double* out) {
  HW_REQUIRE(t);
  HW_REQUIRE(out);
  return guard([&] { *out = t->t(r); });
}

hw_status hw_sample_ball(int n, double R, size_t count, uint64_t seed, uint64_t stream, double* coords) {
  HW_REQUIRE(coords);
  return guard([&] {
    hyperwave::Stream st(seed, stream);
    const hyperwave::BallSampler sampler(n, R);
    for (size_t i = 0; i < count; ++i) {
      const auto x = sampler.sample(st);
      for (int k = 0; k <= n; ++k) coords[i * (n + 1) + k] = x[k];
    }
  });
}

hw_status hw_sample_field(const hw_params* p, const double* coords, size_t count, int realizations, uint64_t seed,
                          const hw_executor* ex, double* values) {
  HW_REQUIRE(p);
  HW_REQUIRE(coords);
  HW_REQUIRE(values);
  return guard([&] {
    const auto pts = read_points(p->p.n(), coords, count);
    const auto fields = hyperwave::sample_gaussian_field(pts, p->p, realizations, seed, adapt(ex));
    for (size_t k = 0; k < fields.size(); ++k)
      for (size_t i = 0; i < count; ++i) values[k * count + i] = fields[k].values[i];
  });
}

hw_status hw_variance_Cq(const hw_params* p, double R, int q, hw_variance_method method, hw_variance_result* out) {
  HW_REQUIRE(p);
  HW_REQUIRE(out);
  return guard([&] {
    hyperwave::VarianceMethod m = hyperwave::VarianceMethod::exact_angular;
    switch (method) {
      case HW_VARIANCE_EXACT_ANGULAR: m = hyperwave::VarianceMethod::exact_angular; break;
      case HW_VARIANCE_SANDWICH_LOWER: m = hyperwave::VarianceMethod::sandwich_lower; break;
      case HW_VARIANCE_SANDWICH_UPPER: m = hyperwave::VarianceMethod::sandwich_upper; break;
      default: throw hyperwave::DomainError("unknown variance method");
    }
    const auto v = hyperwave::variance_Cq(p->p, R, q, m);
    *out = {v.value, v.value_per_qfact, v.est_abs_error, v.odd_q ? 1 : 0, v.accuracy_flag ? 1 : 0};
  });
}

hw_status hw_ball_fourier(const hw_params* p, double R, double* f_R, double* ratio, int* ratio_valid) {
  HW_REQUIRE(p);
  HW_REQUIRE(f_R);
  return guard([&] {
    const auto b = hyperwave::ball_fourier(p->p, R);
    *f_R = b.f_R;
    if (ratio) *ratio = b.ratio;
    if (ratio_valid) *ratio_valid = b.ratio_valid ? 1 : 0;
  });
}

hw_status hw_contraction_mc(const hw_params* p, double R, int pexp, int qexp, long long samples, uint64_t seed,
                            const hw_executor* ex, double* value, double* se) {
  HW_REQUIRE(p);
  HW_REQUIRE(value);
  return guard([&] {
    const auto m = hyperwave::contraction_mc(p->p, R, pexp, qexp, samples, seed, adapt(ex));
    *value = m.value;
    if (se) *se = m.se;
  });
}

hw_status hw_leray_second_moment(const hw_params* p, double R, double* out) {
  HW_REQUIRE(p);
  HW_REQUIRE(out);
  return guard([&] { *out = hyperwave::leray_second_moment(p->p, R); });
}

hw_status hw_euclid_variance(int n, double lambda, double R, int q, double* out) {
  HW_REQUIRE(out);
  return guard([&] { *out = hyperwave::euclid_variance(n, lambda, R, q); });
}

hw_status hw_functional_mc(const hw_params* p, double R, hw_functional kind, double param, int M, int K, uint64_t seed,
                           const hw_executor* ex, double* estimates, double* noise_var) {
  HW_REQUIRE(p);
  HW_REQUIRE(estimates);
  return guard([&] {
    const hyperwave::FieldMcConfig cfg{M, K, seed};
    std::vector<hyperwave::FunctionalSample> s;
    switch (kind) {
      case HW_FUNCTIONAL_POLYSPECTRUM: s = hyperwave::polyspectrum_mc(p->p, R, static_cast<int>(param), cfg, adapt(ex)); break;
      case HW_FUNCTIONAL_EXCURSION: s = hyperwave::excursion_volume_mc(p->p, R, param, cfg, adapt(ex)).samples; break;
      case HW_FUNCTIONAL_LERAY: s = hyperwave::leray_mc(p->p, R, {param}, cfg, adapt(ex))[0]; break;
      default: throw hyperwave::DomainError("unknown functional");
    }
    for (size_t k = 0; k < s.size(); ++k) {
      estimates[k] = s[k].estimate;
      if (noise_var) noise_var[k] = s[k].spatial_noise_var;
    }
  });
}

hw_status hw_wasserstein1_gaussian(const double* samples, size_t count, double var, double* out) {
  HW_REQUIRE(samples);
  HW_REQUIRE(out);
  return guard([&] { *out = hyperwave::wasserstein1_gaussian(std::vector<double>(samples, samples + count), var); });
}

hw_status hw_clt_report_run(const hw_params* p, double R, int q, int M, int K, uint64_t seed, const hw_executor* ex,
                            hw_clt_report* out) {
  HW_REQUIRE(p);
  HW_REQUIRE(out);
  return guard([&] {
    const auto r = hyperwave::clt_report(p->p, R, q, M, K, seed, adapt(ex));
    *out = {r.empirical_variance, r.corrected_variance, r.theoretical_variance, r.w1_to_gaussian, r.no_clt_claim ? 1 : 0};
  });
}

hw_status hw_local_limit(const double* lambdas, size_t count, int n, double extent, int grid_points, double* sup_dev,
                         int* extent_warning) {
  HW_REQUIRE(lambdas);
  HW_REQUIRE(sup_dev);
  return guard([&] {
    const auto r = hyperwave::local_limit_sup(std::vector<double>(lambdas, lambdas + count), n, extent, grid_points);
    for (size_t i = 0; i < r.rows.size(); ++i) sup_dev[i] = r.rows[i].sup_dev;
    if (extent_warning) *extent_warning = r.extent_warning ? 1 : 0;
  });
}

hw_status hw_scaling_fit_run(const double* x, const double* y, size_t count, hw_fit hypothesis, double slope0,
                             int use_slope0, hw_scaling_fit* out) {
  HW_REQUIRE(x);
  HW_REQUIRE(y);
  HW_REQUIRE(out);
  return guard([&] {
    std::vector<std::pair<double, double>> grid;
    for (size_t i = 0; i < count; ++i) grid.emplace_back(x[i], y[i]);
    const auto h = hypothesis == HW_FIT_POWER_WITH_LOG ? hyperwave::FitHypothesis::power_with_log
                                                       : hyperwave::FitHypothesis::pure_power;
    const auto f = hyperwave::scaling_fit(std::move(grid), h, slope0, use_slope0 != 0);
    *out = {f.slope, f.intercept, f.max_rel_residual, f.log_correction_ratio_drift};
  });
}

hw_status hw_reproduce(const char* profile, uint64_t seed, const int* ids, size_t id_count, const hw_executor* ex,
                       hw_criterion_fn on_result, void* user, int* passed) {
  HW_REQUIRE(profile);
  return guard([&] {
    hyperwave::ReproduceOptions opt;
    opt.profile = profile;
    opt.seed = seed;
    if (ids) opt.only.assign(ids, ids + id_count);
    opt.executor = adapt(ex);
    if (on_result)
      opt.on_result = [&](const hyperwave::CriterionResult& r, double secs) {
        on_result(r.id, r.name.c_str(), r.pass ? 1 : 0, r.detail.c_str(), secs, user);
      };
    const auto rows = hyperwave::reproduce(opt);
    int ok = 0;
    for (const auto& r : rows) ok += r.pass ? 1 : 0;
    if (passed) *passed = ok;
  });
}

}  // extern "C"
