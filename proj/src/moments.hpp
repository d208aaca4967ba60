#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "covtable.hpp"
#include "hypgeo.hpp"
#include "parallel.hpp"

namespace hyperwave {

// Cumulative integral of g on [a, b] from piecewise Chebyshev interpolants.
class PanelAntiderivative {
 public:
  PanelAntiderivative(const std::function<double(double)>& g, double a, double b, double max_width);
  double operator()(double x) const;
  double total() const { return offsets_.back(); }

 private:
  static constexpr int kDegree = 16;
  double a_, w_;
  std::vector<double> offsets_;  // value at the left end of each panel (plus the final total)
  std::vector<std::vector<double>> coef_;
};

struct DoubleIntegral {
  double value;
  double error;
  bool accuracy_flag;
};

// omega_{n-1} int_0^R sinh^{n-1} r [ omega_{n-2} int_0^pi sin^{n-2} psi int_0^{L(r,psi)} sinh^{n-1} s f(s) ds dpsi ] dr
DoubleIntegral radial_double_integral(int n, double R, const std::function<double(double)>& f,
                                      double max_panel_width = 0.05, double rel_tol = 1e-9);

enum class VarianceMethod { exact_angular, sandwich_lower, sandwich_upper, montecarlo };
std::string to_string(VarianceMethod m);

struct VarianceResult {
  int n;
  int q;
  double R;
  double alpha;
  double lambda;
  double value;             // C^{n,q} = q! * double integral of F^q
  double value_per_qfact;   // the double integral itself
  VarianceMethod method;
  double est_abs_error;     // for value
  bool odd_q;
  bool accuracy_flag;
};

VarianceResult variance_Cq(const SpectralParams& p, double R, int q,
                           VarianceMethod method = VarianceMethod::exact_angular);
// the same integral with |F|^q, used as the odd-q envelope
VarianceResult variance_Cq_abs(const SpectralParams& p, double R, int q);

struct BallFourier {
  double f_R;
  double ratio;       // variance_Cq(q=1) / f_R^2, NaN when |f_R| <= 1e-10
  bool ratio_valid;
};

double ball_fourier_transform(const SpectralParams& p, double R);
BallFourier ball_fourier(const SpectralParams& p, double R);

struct McEstimate {
  double value;
  double se;
};

McEstimate contraction_mc(const SpectralParams& p, double R, int pexp, int qexp, long long samples,
                          std::uint64_t seed, const Executor& executor = {});

double leray_second_moment(const SpectralParams& p, double R);

double euclid_variance(int n, double lambda, double R, int q);

enum class FitHypothesis { pure_power, power_with_log };

struct ScalingFit {
  std::vector<std::pair<double, double>> grid;
  double slope;
  double intercept;  // for power_with_log with a pinned slope: b in y = x^slope (a log x + b)
  double max_rel_residual;
  double log_correction_ratio_drift;  // max/min of y x^{-slope0} / log x over the top decade (power_with_log)
};

ScalingFit scaling_fit(std::vector<std::pair<double, double>> grid, FitHypothesis hypothesis,
                       double slope0 = 0.0, bool use_slope0 = false);

}  // namespace hyperwave
