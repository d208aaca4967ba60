#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "hyperwave/hyperwave.h"
#include "json.hpp"

namespace {

struct CliError {
  int code;
  std::string message;
};

struct Common {
  std::string config;
  std::uint64_t seed = 42;
  int workers = 1;
  std::string out = "-";
  bool strict = false;
};

bool g_strict = false;
bool g_flagged = false;

void check(hw_status s) {
  if (s == HW_OK) return;
  std::string msg = hw_last_error();
  if (s == HW_ERR_DOMAIN || s == HW_ERR_CONFIG || s == HW_ERR_NULL_ARGUMENT) throw CliError{2, msg};
  if (s == HW_ERR_ACCURACY && g_strict) throw CliError{3, msg};
  throw CliError{1, msg};
}

void flag_accuracy(bool flagged) { g_flagged = g_flagged || flagged; }

struct Pool {
  int workers;
  static void run(size_t count, hw_task_fn task, void* ctx, void* user) {
    const int w = static_cast<Pool*>(user)->workers;
    if (w <= 1 || count <= 1) {
      for (size_t i = 0; i < count; ++i) task(i, ctx);
      return;
    }
    std::atomic<size_t> next{0};
    auto body = [&] {
      for (size_t i = next++; i < count; i = next++) task(i, ctx);
    };
    std::vector<std::thread> threads;
    for (int t = 1; t < w && static_cast<size_t>(t) < count; ++t) threads.emplace_back(body);
    body();
    for (auto& t : threads) t.join();
  }
};

class Params {
 public:
  Params(int n, double alpha) { check(hw_params_create(n, alpha, &p_)); }
  ~Params() { hw_params_destroy(p_); }
  Params(const Params&) = delete;
  Params& operator=(const Params&) = delete;
  const hw_params* get() const { return p_; }
  double lambda() const {
    double l = 0.0;
    check(hw_params_get(p_, nullptr, nullptr, nullptr, &l));
    return l;
  }

 private:
  hw_params* p_ = nullptr;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return v;
}

class Output {
 public:
  Output(const std::string& path, CLI::App* sub) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw CliError{2, "cannot open output file " + path};
    }
    std::ostream& os = stream();
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << stamp << "\n";
    os << "# hyperwave " << hw_version() << "\n";
    os << "# command " << sub->get_name() << "\n";
    for (const CLI::Option* opt : sub->get_options()) {
      const std::string name = opt->get_single_name();
      if (name == "help" || name == "workers" || name == "config" || name == "out") continue;
      std::string value;
      if (opt->get_type_size() == 0) {
        value = opt->count() > 0 ? "true" : "false";
      } else if (opt->count() > 0) {
        const auto res = opt->results();
        for (size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
      } else {
        value = opt->get_default_str();
      }
      os << "# " << name << "=" << value << "\n";
    }
  }
  std::ostream& stream() { return file_ ? static_cast<std::ostream&>(*file_) : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void add_common(CLI::App* sub, Common& c, bool seeded = true) {
  sub->add_option("--config", c.config, "JSON file whose keys mirror the flags (flags win)");
  if (seeded) sub->add_option("--seed", c.seed, "64-bit seed")->capture_default_str();
  sub->add_option("--workers", c.workers, "worker threads (default: HYPERWAVE_THREADS or 1)");
  sub->add_option("--out", c.out, "output path, - for standard output");
  sub->add_flag("--strict", c.strict, "treat numerical-accuracy flags as failures (exit 3)");
}

// config keys become flags unless the flag was given explicitly
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw CliError{2, "cannot read config file " + path};
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CliError{2, std::string("config file is not valid JSON: ") + e.what()};
  }
  if (!j.is_object()) throw CliError{2, "config file must hold a JSON object"};
  std::vector<std::string> out = args;
  for (const auto& [key, value] : j.items()) {
    if (key == "config") throw CliError{2, "config files cannot nest"};
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (size_t i = 0; i < value.size(); ++i) {
        if (value[i].is_object() || value[i].is_array()) throw CliError{2, "config key '" + key + "' has nested values"};
        joined += (i ? "," : "") + (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
      }
      out.push_back(flag);
      out.push_back(joined);
    } else if (value.is_object() || value.is_null()) {
      throw CliError{2, "config key '" + key + "' must be a scalar or a list"};
    } else {
      out.push_back(flag);
      out.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return out;
}

int default_workers() {
  const char* env = std::getenv("HYPERWAVE_THREADS");
  if (env == nullptr) return 1;
  try {
    return std::max(1, std::stoi(env));
  } catch (...) {
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = merge_config(args);
  } catch (const CliError& e) {
    std::cerr << "hyperwave: " << e.message << "\n";
    return e.code;
  }

  CLI::App app{"Gaussian random waves on hyperbolic space", "hyperwave"};
  app.require_subcommand(1);
  Common c;
  c.workers = default_workers();

  // covar
  auto* covar = app.add_subcommand("covar", "spherical function F by every route, with tail band and Bessel form");
  int cv_n = 2;
  double cv_alpha = 5.0, cv_rmin = 1e-3, cv_rmax = 6.0;
  int cv_points = 200;
  std::string cv_routes = "all";
  covar->add_option("--n", cv_n)->capture_default_str();
  covar->add_option("--alpha", cv_alpha)->capture_default_str();
  covar->add_option("--r-min", cv_rmin)->capture_default_str();
  covar->add_option("--r-max", cv_rmax)->capture_default_str();
  covar->add_option("--points", cv_points)->capture_default_str();
  covar->add_option("--routes", cv_routes, "all or a comma list of ode,quad,hyp")->capture_default_str();
  add_common(covar, c, false);

  // sample
  auto* sample = app.add_subcommand("sample", "exact Gaussian field draws on uniform points of a ball");
  int sm_n = 2, sm_points = 500, sm_real = 8;
  double sm_alpha = 10.0, sm_radius = 2.0;
  sample->add_option("--n", sm_n)->capture_default_str();
  sample->add_option("--alpha", sm_alpha)->capture_default_str();
  sample->add_option("--radius", sm_radius)->capture_default_str();
  sample->add_option("--points", sm_points)->capture_default_str();
  sample->add_option("--realizations", sm_real)->capture_default_str();
  add_common(sample, c);

  // variance-table
  auto* vt = app.add_subcommand("variance-table", "polyspectrum variances over a lambda or radius grid");
  std::string vt_regime, vt_method = "exact";
  int vt_n = 2;
  std::vector<int> vt_q{2, 4, 6};
  std::vector<double> vt_grid;
  double vt_radius = 2.0, vt_alpha = 2.0;
  vt->add_option("--regime", vt_regime)->required()->check(CLI::IsMember({"lambda", "radius"}));
  vt->add_option("--n", vt_n)->capture_default_str();
  vt->add_option("--q", vt_q)->delimiter(',')->capture_default_str();
  vt->add_option("--grid", vt_grid, "alpha values (lambda regime) or radii (radius regime)")->delimiter(',');
  vt->add_option("--radius", vt_radius, "fixed radius in the lambda regime")->capture_default_str();
  vt->add_option("--alpha", vt_alpha, "fixed alpha in the radius regime")->capture_default_str();
  vt->add_option("--method", vt_method)->check(CLI::IsMember({"exact", "lower", "upper"}))->capture_default_str();
  add_common(vt, c, false);

  // contractions
  auto* ct = app.add_subcommand("contractions", "Monte Carlo contraction integrals and the ratio X");
  std::string ct_regime = "lambda";
  int ct_n = 2, ct_p = 1, ct_q = 1;
  std::vector<double> ct_grid;
  double ct_radius = 2.0, ct_alpha = 2.0;
  long long ct_samples = 1000000;
  ct->add_option("--regime", ct_regime)->check(CLI::IsMember({"lambda", "radius"}))->capture_default_str();
  ct->add_option("--n", ct_n)->capture_default_str();
  ct->add_option("--grid", ct_grid)->delimiter(',');
  ct->add_option("--radius", ct_radius)->capture_default_str();
  ct->add_option("--alpha", ct_alpha)->capture_default_str();
  ct->add_option("--samples", ct_samples)->capture_default_str();
  ct->add_option("--p", ct_p)->capture_default_str();
  ct->add_option("--q", ct_q)->capture_default_str();
  add_common(ct, c);

  // euclid
  auto* eu = app.add_subcommand("euclid", "Euclidean polyspectrum variances for comparison");
  int eu_n = 2, eu_q = 4;
  double eu_lambda = 4.0;
  std::vector<double> eu_grid{5, 10, 20, 40};
  eu->add_option("--n", eu_n)->capture_default_str();
  eu->add_option("--q", eu_q)->capture_default_str();
  eu->add_option("--lambda", eu_lambda)->capture_default_str();
  eu->add_option("--grid", eu_grid, "radii")->delimiter(',')->capture_default_str();
  add_common(eu, c, false);

  // clt, excursion, leray share their flags
  struct FieldFlags {
    int n = 2, q = 2, M = 1000, K = 200;
    double alpha = 10.0, radius = 2.0, t = 1.0, eps = 0.05;
    std::string regime;
    std::vector<double> grid;
  } ff;
  auto field_flags = [&](CLI::App* s) {
    s->add_option("--n", ff.n)->capture_default_str();
    s->add_option("--alpha", ff.alpha)->capture_default_str();
    s->add_option("--radius", ff.radius)->capture_default_str();
    s->add_option("--spatial-points", ff.M)->capture_default_str();
    s->add_option("--realizations", ff.K)->capture_default_str();
    add_common(s, c);
  };
  auto* clt = app.add_subcommand("clt", "polyspectrum samples, or CLT reports over a grid with --regime");
  field_flags(clt);
  clt->add_option("--q", ff.q)->capture_default_str();
  clt->add_option("--regime", ff.regime)->check(CLI::IsMember({"lambda", "radius"}));
  clt->add_option("--grid", ff.grid, "alpha values or radii for --regime")->delimiter(',');
  auto* exc = app.add_subcommand("excursion", "excursion volume samples");
  field_flags(exc);
  exc->add_option("--t", ff.t)->capture_default_str();
  auto* ler = app.add_subcommand("leray", "Leray measure samples");
  field_flags(ler);
  ler->add_option("--eps", ff.eps)->capture_default_str();

  // local-limit
  auto* ll = app.add_subcommand("local-limit", "deviation of the rescaled covariance from the Berry limit");
  int ll_n = 2, ll_grid = 21;
  double ll_extent = 5.0;
  std::vector<double> ll_lambdas{1e2, 1e3, 1e4};
  ll->add_option("--n", ll_n)->capture_default_str();
  ll->add_option("--lambdas", ll_lambdas)->delimiter(',')->capture_default_str();
  ll->add_option("--extent", ll_extent)->capture_default_str();
  ll->add_option("--grid-points", ll_grid)->capture_default_str();
  add_common(ll, c, false);

  // reproduce
  auto* rp = app.add_subcommand("reproduce", "run the acceptance criteria and write report.csv");
  std::string rp_profile = "desk";
  std::vector<int> rp_only;
  rp->add_option("--profile", rp_profile)->check(CLI::IsMember({"desk", "quick"}))->capture_default_str();
  rp->add_option("--only", rp_only, "criterion ids")->delimiter(',');
  add_common(rp, c);
  rp->get_option("--out")->default_val("report.csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  g_strict = c.strict;
  Pool pool{std::max(1, c.workers)};
  hw_executor ex{&Pool::run, &pool};
  CLI::App* sub = app.get_subcommands().front();

  try {
    if (sub == covar) {
      bool ode = false, quad = false, hyp = false;
      std::stringstream ss(cv_routes);
      for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok == "all") ode = quad = hyp = true;
        else if (tok == "ode") ode = true;
        else if (tok == "quad") quad = true;
        else if (tok == "hyp") hyp = true;
        else throw CliError{2, "unknown route '" + tok + "'"};
      }
      if (cv_points < 2 || !(cv_rmax > cv_rmin) || !(cv_rmin > 0.0)) throw CliError{2, "need r-max > r-min > 0 and points >= 2"};
      Params p(cv_n, cv_alpha);
      std::vector<std::string> rows(cv_points);
      std::vector<int> degraded(cv_points, 0);
      struct Job {
        std::vector<std::string>* rows;
        std::vector<int>* degraded;
        const Params* p;
        double rmin, rmax;
        int points;
        bool ode, quad, hyp;
        std::vector<std::string> errors;
      } job{&rows, &degraded, &p, cv_rmin, cv_rmax, cv_points, ode, quad, hyp, std::vector<std::string>(cv_points)};
      pool.run(
          cv_points,
          [](size_t i, void* raw) {
            auto* j = static_cast<Job*>(raw);
            const double r = j->rmin + (j->rmax - j->rmin) * static_cast<double>(i) / (j->points - 1);
            std::string line = num(r);
            auto route = [&](bool on, hw_route rt) {
              line += ',';
              if (!on) return;
              double v = 0.0, e = 0.0;
              int deg = 0;
              if (hw_spherical_F(j->p->get(), r, rt, &v, &e, &deg) == HW_OK) {
                line += num(v);
                (*j->degraded)[i] |= deg;
              } else {
                j->errors[i] = hw_last_error();
              }
            };
            route(j->ode, HW_ROUTE_ODE);
            route(j->quad, HW_ROUTE_QUADRATURE);
            route(j->hyp, HW_ROUTE_HYPERGEOMETRIC);
            double main = 0.0, bound = 0.0, bessel = 0.0;
            line += ',';
            if (hw_asymptotic_tail(j->p->get(), r, &main, &bound) == HW_OK) line += num(main) + ',' + num(bound);
            else line += ',';
            line += ',';
            if (hw_bessel_approx(j->p->get(), r, &bessel) == HW_OK) line += num(bessel);
            (*j->rows)[i] = line;
          },
          &job, &pool);
      for (const auto& e : job.errors)
        if (!e.empty()) throw CliError{1, e};
      for (int d : degraded) flag_accuracy(d != 0);
      Output out(c.out, sub);
      out.stream() << "r,F_ode,F_quad,F_hyp,tail_main,tail_bound,bessel_approx\n";
      for (const auto& r : rows) out.stream() << r << "\n";
    } else if (sub == sample) {
      Params p(sm_n, sm_alpha);
      std::vector<double> coords(static_cast<size_t>(sm_points) * (sm_n + 1));
      check(hw_sample_ball(sm_n, sm_radius, sm_points, c.seed, 1ull << 63, coords.data()));
      std::vector<double> values(static_cast<size_t>(sm_points) * sm_real);
      check(hw_sample_field(p.get(), coords.data(), sm_points, sm_real, c.seed, &ex, values.data()));
      Output out(c.out, sub);
      auto& os = out.stream();
      os << "realization";
      for (int k = 0; k <= sm_n; ++k) os << ",x" << k;
      os << ",value\n";
      for (int k = 0; k < sm_real; ++k)
        for (int i = 0; i < sm_points; ++i) {
          os << k;
          for (int d = 0; d <= sm_n; ++d) os << ',' << num(coords[i * (sm_n + 1) + d]);
          os << ',' << num(values[static_cast<size_t>(k) * sm_points + i]) << "\n";
        }
    } else if (sub == vt) {
      if (vt_grid.empty()) vt_grid = vt_regime == "lambda" ? log_grid(10.0, 100.0, 12) : std::vector<double>{3, 4, 5, 6, 7, 8};
      const hw_variance_method method = vt_method == "exact"   ? HW_VARIANCE_EXACT_ANGULAR
                                        : vt_method == "lower" ? HW_VARIANCE_SANDWICH_LOWER
                                                               : HW_VARIANCE_SANDWICH_UPPER;
      const char* method_name = vt_method == "exact" ? "exact_angular" : vt_method == "lower" ? "sandwich_lower" : "sandwich_upper";
      Output out(c.out, sub);
      auto& os = out.stream();
      os << "n,q,R,alpha,lambda,value,value_per_qfact,method,est_abs_error\n";
      for (int q : vt_q)
        for (double g : vt_grid) {
          const double alpha = vt_regime == "lambda" ? g : vt_alpha;
          const double R = vt_regime == "lambda" ? vt_radius : g;
          Params p(vt_n, alpha);
          hw_variance_result r{};
          check(hw_variance_Cq(p.get(), R, q, method, &r));
          flag_accuracy(r.accuracy_flag != 0);
          os << vt_n << ',' << q << ',' << num(R) << ',' << num(alpha) << ',' << num(p.lambda()) << ',' << num(r.value) << ','
             << num(r.value_per_qfact) << ',' << method_name << ',' << num(r.est_abs_error) << "\n";
        }
    } else if (sub == ct) {
      if (ct_grid.empty()) ct_grid = ct_regime == "lambda" ? std::vector<double>{5, 10, 20, 40} : std::vector<double>{2, 3, 4, 5};
      Output out(c.out, sub);
      auto& os = out.stream();
      os << "n,R,alpha,lambda,p,q,samples,contraction,se,variance_q2,X\n";
      for (size_t i = 0; i < ct_grid.size(); ++i) {
        const double alpha = ct_regime == "lambda" ? ct_grid[i] : ct_alpha;
        const double R = ct_regime == "lambda" ? ct_radius : ct_grid[i];
        Params p(ct_n, alpha);
        double v = 0.0, se = 0.0;
        check(hw_contraction_mc(p.get(), R, ct_p, ct_q, ct_samples, c.seed + i, &ex, &v, &se));
        hw_variance_result var{};
        check(hw_variance_Cq(p.get(), R, 2, HW_VARIANCE_EXACT_ANGULAR, &var));
        flag_accuracy(var.accuracy_flag != 0);
        os << ct_n << ',' << num(R) << ',' << num(alpha) << ',' << num(p.lambda()) << ',' << ct_p << ',' << ct_q << ','
           << ct_samples << ',' << num(v) << ',' << num(se) << ',' << num(var.value) << ',' << num(v / (var.value * var.value))
           << "\n";
      }
    } else if (sub == eu) {
      const double vn = std::pow(std::numbers::pi, 0.5 * eu_n) / std::tgamma(0.5 * eu_n + 1.0);
      Output out(c.out, sub);
      auto& os = out.stream();
      os << "n,q,R,lambda,value,value_over_volume\n";
      for (double R : eu_grid) {
        double v = 0.0;
        check(hw_euclid_variance(eu_n, eu_lambda, R, eu_q, &v));
        os << eu_n << ',' << eu_q << ',' << num(R) << ',' << num(eu_lambda) << ',' << num(v) << ','
           << num(v / (vn * std::pow(R, eu_n))) << "\n";
      }
    } else if (sub == clt && !ff.regime.empty()) {
      if (ff.grid.empty()) ff.grid = ff.regime == "lambda" ? std::vector<double>{10, 30, 100} : std::vector<double>{3, 5, 7};
      Output out(c.out, sub);
      auto& os = out.stream();
      os << "n,q,R,alpha,K,M,seed,w1,var_emp,var_theory\n";
      for (size_t i = 0; i < ff.grid.size(); ++i) {
        const double alpha = ff.regime == "lambda" ? ff.grid[i] : ff.alpha;
        const double R = ff.regime == "lambda" ? ff.radius : ff.grid[i];
        Params p(ff.n, alpha);
        hw_clt_report rep{};
        const std::uint64_t seed = c.seed + i;
        check(hw_clt_report_run(p.get(), R, ff.q, ff.M, ff.K, seed, &ex, &rep));
        os << ff.n << ',' << ff.q << ',' << num(R) << ',' << num(alpha) << ',' << ff.K << ',' << ff.M << ',' << seed << ','
           << num(rep.w1) << ',' << num(rep.empirical_variance) << ',' << num(rep.theoretical_variance) << "\n";
      }
    } else if (sub == clt || sub == exc || sub == ler) {
      Params p(ff.n, ff.alpha);
      if (ff.K < 1) throw CliError{2, "realizations must be at least 1"};
      std::vector<double> est(ff.K), noise(ff.K);
      const hw_functional kind = sub == clt ? HW_FUNCTIONAL_POLYSPECTRUM : sub == exc ? HW_FUNCTIONAL_EXCURSION : HW_FUNCTIONAL_LERAY;
      const double param = sub == clt ? ff.q : sub == exc ? ff.t : ff.eps;
      check(hw_functional_mc(p.get(), ff.radius, kind, param, ff.M, ff.K, c.seed, &ex, est.data(), noise.data()));
      Output out(c.out, sub);
      auto& os = out.stream();
      os << "realization,estimate,spatial_noise_var\n";
      for (int k = 0; k < ff.K; ++k) os << k << ',' << num(est[k]) << ',' << num(noise[k]) << "\n";
    } else if (sub == ll) {
      std::vector<double> sup(ll_lambdas.size());
      int warn = 0;
      check(hw_local_limit(ll_lambdas.data(), ll_lambdas.size(), ll_n, ll_extent, ll_grid, sup.data(), &warn));
      if (warn) std::cerr << "hyperwave: warning: extent reaches sqrt(lambda)/2 for some lambda\n";
      Output out(c.out, sub);
      auto& os = out.stream();
      os << "lambda,sup_dev\n";
      for (size_t i = 0; i < sup.size(); ++i) os << num(ll_lambdas[i]) << ',' << num(sup[i]) << "\n";
    } else if (sub == rp) {
      struct Row {
        int id;
        std::string name, detail;
        int pass;
      };
      std::vector<Row> rows;
      auto cb = [](int id, const char* name, int pass, const char* detail, double secs, void* user) {
        static_cast<std::vector<Row>*>(user)->push_back({id, name, detail, pass});
        std::fprintf(stderr, "criterion %2d %-40s %s (%.1f s) %s\n", id, name, pass ? "PASS" : "FAIL", secs, detail);
      };
      int passed = 0;
      check(hw_reproduce(rp_profile.c_str(), c.seed, rp_only.empty() ? nullptr : rp_only.data(), rp_only.size(), &ex, cb,
                         &rows, &passed));
      Output out(c.out, sub);
      auto& os = out.stream();
      os << "criterion,name,status,detail\n";
      for (const auto& r : rows) os << r.id << ',' << r.name << ',' << (r.pass ? "pass" : "fail") << ",\"" << r.detail << "\"\n";
      std::fprintf(stderr, "%d of %zu criteria passed\n", passed, rows.size());
    }
  } catch (const CliError& e) {
    std::cerr << "hyperwave: " << e.message << "\n";
    return e.code;
  }
  if (g_strict && g_flagged) {
    std::cerr << "hyperwave: numerical accuracy flag raised (strict mode)\n";
    return 3;
  }
  return 0;
}
