#include "chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "covtable.hpp"
#include "errors.hpp"
#include "numeric.hpp"
#include "waves.hpp"

namespace hyperwave {

double hermite(int q, double x) {
  if (q < 0) throw DomainError("Hermite order must be nonnegative");
  if (q == 0) return 1.0;
  double h0 = 1.0, h1 = x;
  for (int k = 1; k < q; ++k) {
    double h2 = x * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

long double hermite_extended(int q, long double x) {
  if (q < 0) throw DomainError("Hermite order must be nonnegative");
  if (q == 0) return 1.0L;
  long double h0 = 1.0L, h1 = x;
  for (int k = 1; k < q; ++k) {
    long double h2 = x * h1 - k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

std::vector<double> hermite_all(int q_max, double x) {
  std::vector<double> h(q_max + 1);
  h[0] = 1.0;
  if (q_max >= 1) h[1] = x;
  for (int k = 1; k < q_max; ++k) h[k + 1] = x * h[k] - k * h[k - 1];
  return h;
}

double psi_coeff(int q, double t) {
  if (q == 0) return normal_cdf(t);
  return -hermite(q - 1, t) * normal_pdf(t);
}

std::vector<double> indicator_coeffs(double t, int q_max) {
  std::vector<double> a(q_max + 1);
  double fact = 1.0;
  for (int q = 0; q <= q_max; ++q) {
    if (q > 0) fact *= q;
    a[q] = psi_coeff(q, t) / fact;
  }
  return a;
}

double leray_b(int q) {
  if (q % 2 == 1) return 0.0;
  double fact = std::tgamma(q + 1.0);
  return hermite(q, 0.0) * normal_pdf(0.0) / fact;
}

double leray_B_norm_sq(int two_l) {
  if (two_l % 2 == 1) return 0.0;
  const int l = two_l / 2;
  // binom(2l, l) / 4^l built as a product to stay in range
  double r = 1.0;
  for (int j = 1; j <= l; ++j) r *= (l + j) / (4.0 * j);
  return r / (2.0 * std::numbers::pi);
}

namespace {

std::vector<double> weighted_moments(const std::function<double(double)>& G, int q_max, int nodes) {
  const auto& gh = gauss_hermite_normal(nodes);
  std::vector<double> c(q_max + 1, 0.0);
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    double g = G(gh.nodes[i]);
    auto h = hermite_all(q_max, gh.nodes[i]);
    for (int q = 0; q <= q_max; ++q) c[q] += gh.weights[i] * g * h[q];
  }
  return c;
}

std::vector<double> piecewise_moments(const std::function<double(double)>& G, int q_max,
                                      std::vector<double> cuts) {
  const double L = 40.0;
  cuts.push_back(-L);
  cuts.push_back(L);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto& gl = gauss_legendre(48);
  std::vector<double> c(q_max + 1, 0.0);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    double a = std::max(cuts[s], -L), b = std::min(cuts[s + 1], L);
    if (b <= a) continue;
    int panels = std::max(1, static_cast<int>(std::ceil((b - a) / 0.5)));
    double w = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
      double mid = a + (k + 0.5) * w;
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        double x = mid + 0.5 * w * gl.nodes[i];
        double g = G(x) * normal_pdf(x) * 0.5 * w * gl.weights[i];
        auto h = hermite_all(q_max, x);
        for (int q = 0; q <= q_max; ++q) c[q] += g * h[q];
      }
    }
  }
  return c;
}

}  // namespace

Projection project_function(const std::function<double(double)>& G, int q_max, const std::vector<double>& breakpoints) {
  if (q_max < 0) throw DomainError("q_max must be nonnegative");
  std::vector<double> full, coarse;
  if (breakpoints.empty()) {
    full = weighted_moments(G, q_max, 200);
    coarse = weighted_moments(G, q_max, 100);
  } else {
    full = piecewise_moments(G, q_max, breakpoints);
    coarse = full;
  }
  Projection out;
  out.coeffs.resize(q_max + 1);
  out.rank = -1;
  out.divergence_flag = false;
  double fact = 1.0;
  for (int q = 0; q <= q_max; ++q) {
    if (q > 0) fact *= q;
    out.coeffs[q] = full[q] / fact;
    if (!std::isfinite(full[q]) || std::abs(full[q]) > 10.0 * std::abs(coarse[q]) + 1e-6) out.divergence_flag = true;
    if (q >= 1 && out.rank < 0 && std::abs(out.coeffs[q]) > 1e-10) out.rank = q;
  }
  return out;
}

std::vector<std::vector<FunctionalSample>> field_functionals_mc(const SpectralParams& p, double R,
                                                                const std::vector<PointFunctional>& functionals,
                                                                const FieldMcConfig& cfg, const Executor& executor) {
  if (!(R > 0.0)) throw DomainError("radius must be positive");
  if (cfg.M < 20 || cfg.M > kMaxCholeskyPoints) throw DomainError("spatial points must lie in [20, 4000]");
  if (cfg.K < 1) throw DomainError("realizations must be at least 1");
  const double m = ball_volume(p.n(), R);
  const BallSampler sampler(p.n(), R);
  const CovarianceTable table(p, 2.0 * R * (1.0 + 1e-9));
  const std::size_t nf = functionals.size();
  std::vector<std::vector<FunctionalSample>> out(nf, std::vector<FunctionalSample>(cfg.K));
  constexpr int blocks = 20;
  run_indexed(executor, static_cast<std::size_t>(cfg.K), [&](std::size_t k) {
    Stream stream(cfg.seed, k);
    auto points = sampler.sample(cfg.M, stream);
    FieldFactor factor(covariance_matrix(points, table));
    Eigen::VectorXd u = factor.draw(stream);
    std::vector<double> vals(cfg.M);
    std::vector<double> block_sum(blocks);
    for (std::size_t f = 0; f < nf; ++f) {
      for (int i = 0; i < cfg.M; ++i) vals[i] = functionals[f](u(i));
      std::fill(block_sum.begin(), block_sum.end(), 0.0);
      std::vector<int> block_count(blocks, 0);
      for (int i = 0; i < cfg.M; ++i) {
        int b = static_cast<int>(static_cast<long long>(i) * blocks / cfg.M);
        block_sum[b] += vals[i];
        block_count[b] += 1;
      }
      double total = pairwise_sum(vals.data(), vals.size());
      double est = m * total / cfg.M;
      std::vector<double> loo(blocks);
      double mean_loo = 0.0;
      for (int b = 0; b < blocks; ++b) {
        loo[b] = m * (total - block_sum[b]) / (cfg.M - block_count[b]);
        mean_loo += loo[b];
      }
      mean_loo /= blocks;
      double var = 0.0;
      for (int b = 0; b < blocks; ++b) var += (loo[b] - mean_loo) * (loo[b] - mean_loo);
      var *= static_cast<double>(blocks - 1) / blocks;
      out[f][k] = {est, var};
    }
  });
  return out;
}

std::vector<FunctionalSample> polyspectrum_mc(const SpectralParams& p, double R, int q, const FieldMcConfig& cfg,
                                              const Executor& executor) {
  if (q < 0) throw DomainError("chaos order must be nonnegative");
  return field_functionals_mc(p, R, {[q](double u) { return hermite(q, u); }}, cfg, executor)[0];
}

ExcursionRun excursion_volume_mc(const SpectralParams& p, double R, double t, const FieldMcConfig& cfg,
                                 const Executor& executor) {
  auto s = field_functionals_mc(p, R, {[t](double u) { return u <= t ? 1.0 : 0.0; }}, cfg, executor);
  return {std::move(s[0]), t == 0.0};
}

std::vector<std::vector<FunctionalSample>> leray_mc(const SpectralParams& p, double R,
                                                    const std::vector<double>& eps_list, const FieldMcConfig& cfg,
                                                    const Executor& executor) {
  std::vector<PointFunctional> fs;
  for (double e : eps_list) {
    if (!(e > 0.0)) throw DomainError("Leray window must be positive");
    fs.push_back([e](double u) { return std::abs(u) <= e ? 0.5 / e : 0.0; });
  }
  return field_functionals_mc(p, R, fs, cfg, executor);
}

}  // namespace hyperwave
