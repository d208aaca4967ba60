#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "covtable.hpp"
#include "errors.hpp"
#include "moments.hpp"
#include "numeric.hpp"
#include "specfun.hpp"

namespace hyperwave {

double wasserstein1_gaussian(std::vector<double> samples, double var) {
  if (!(var > 0.0)) throw DomainError("wasserstein1_gaussian needs a positive variance");
  if (samples.size() < 100) throw DomainError("wasserstein1_gaussian needs at least 100 samples");
  std::sort(samples.begin(), samples.end());
  const double K = static_cast<double>(samples.size());
  const double sd = std::sqrt(var);
  NeumaierSum acc;
  for (std::size_t i = 0; i < samples.size(); ++i)
    acc.add(std::abs(samples[i] - sd * normal_quantile((i + 0.5) / K)));
  return acc.value() / K;
}

CltReport clt_report(const SpectralParams& p, double R, int q, int M, int K, std::uint64_t seed,
                     const Executor& executor) {
  if (q <= 0) throw DomainError("clt_report needs q >= 1");
  if (K < 100) throw DomainError("clt_report needs at least 100 realizations");
  const auto samples = polyspectrum_mc(p, R, q, FieldMcConfig{M, K, seed}, executor);
  const double theory = variance_Cq(p, R, q).value;
  if (!(theory > 0.0)) throw Error(ErrorCode::accuracy, "theoretical variance is not positive");
  NeumaierSum mean_acc, noise_acc;
  for (const auto& s : samples) {
    mean_acc.add(s.estimate);
    noise_acc.add(s.spatial_noise_var);
  }
  const double mean = mean_acc.value() / K;
  NeumaierSum var_acc;
  for (const auto& s : samples) var_acc.add((s.estimate - mean) * (s.estimate - mean));
  const double emp = var_acc.value() / (K - 1);
  std::vector<double> normalized;
  normalized.reserve(samples.size());
  for (const auto& s : samples) normalized.push_back(s.estimate / std::sqrt(theory));
  CltReport rep{q, p.n(), R, p.alpha(), K, M, seed, emp, emp - noise_acc.value() / K, theory, 0.0, q % 2 == 1,
                "h/sqrt(var_theory) vs N(0, var_emp/var_theory)"};
  rep.w1_to_gaussian = wasserstein1_gaussian(std::move(normalized), emp / theory);
  return rep;
}

LocalLimitResult local_limit_sup(const std::vector<double>& lambdas, int n, double extent, int grid_points) {
  if (n < 2) throw DomainError("dimension n must be at least 2");
  if (!(extent > 0.0) || grid_points < 2) throw DomainError("local_limit_sup needs a positive extent and grid");
  LocalLimitResult out{{}, false};
  const HyperPoint o = HyperPoint::origin(n);
  for (double lambda : lambdas) {
    const SpectralParams p = SpectralParams::from_lambda(n, lambda);
    if (extent >= 0.5 * std::sqrt(lambda)) out.extent_warning = true;
    const double scale = 1.0 / std::sqrt(lambda);
    const CovarianceTable table(p, 2.0 * extent * scale * 1.01 + 1e-6);
    double sup = 0.0;
    for (int i = 0; i < grid_points; ++i) {
      double a = extent * i / (grid_points - 1);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
      v(0) = a * scale;
      const HyperPoint x = exp_map(o, v);
      for (int j = 0; j < grid_points; ++j) {
        double b = extent * j / (grid_points - 1);
        for (int k = 0; k < grid_points; ++k) {
          double th = std::numbers::pi * k / (grid_points - 1);
          Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
          w(0) = b * scale * std::cos(th);
          w(1) = b * scale * std::sin(th);
          const double d = distance(x, exp_map(o, w));
          const double e = std::sqrt(std::max(0.0, a * a + b * b - 2.0 * a * b * std::cos(th)));
          sup = std::max(sup, std::abs(table(std::min(d, table.r_max())) - berry_covariance(n, 1.0, e)));
        }
      }
    }
    out.rows.push_back({lambda, sup});
  }
  return out;
}

}  // namespace hyperwave
