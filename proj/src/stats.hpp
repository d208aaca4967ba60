#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chaos.hpp"
#include "hypgeo.hpp"
#include "parallel.hpp"

namespace hyperwave {

// (1/K) sum |x_(i) - q_i| with q_i the N(0, var) quantile at (i - 1/2)/K
double wasserstein1_gaussian(std::vector<double> samples, double var);

struct CltReport {
  int q;
  int n;
  double R;
  double alpha;
  int K;
  int M;
  std::uint64_t seed;
  double empirical_variance;   // raw sample variance of the polyspectrum
  double corrected_variance;   // minus the mean spatial-noise variance
  double theoretical_variance;
  double w1_to_gaussian;       // h / sqrt(var_theory) against N(0, var_emp / var_theory)
  bool no_clt_claim;           // odd q
  std::string normalization;
};

CltReport clt_report(const SpectralParams& p, double R, int q, int M, int K, std::uint64_t seed,
                     const Executor& executor = {});

struct LocalLimitRow {
  double lambda;
  double sup_dev;
};

struct LocalLimitResult {
  std::vector<LocalLimitRow> rows;
  bool extent_warning;  // extent >= sqrt(lambda)/2 for some lambda
};

// F(d(exp(v/sqrt(l)), exp(v'/sqrt(l)))) against the Berry covariance at energy 1, over |v|, |v'| <= extent and the angle
LocalLimitResult local_limit_sup(const std::vector<double>& lambdas, int n, double extent, int grid_points);

}  // namespace hyperwave
