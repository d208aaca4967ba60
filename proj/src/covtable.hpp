#pragma once

#include <vector>

#include "hypgeo.hpp"

namespace hyperwave {

// Immutable table of F_{n,lambda} on [0, r_max] with quintic Hermite interpolation.
class CovarianceTable {
 public:
  CovarianceTable(const SpectralParams& p, double r_max);

  double operator()(double r) const;
  // 1 - F(r) without cancellation near r = 0
  double one_minus(double r) const;

  const SpectralParams& params() const { return p_; }
  double r_max() const { return r_max_; }
  double spacing() const { return h_; }

 private:
  SpectralParams p_;
  double r_max_;
  double h_;
  double series_cut_;
  std::vector<double> f_, d_, s_;
};

}  // namespace hyperwave
