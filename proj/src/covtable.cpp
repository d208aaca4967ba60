#include "covtable.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "specfun.hpp"

namespace hyperwave {

CovarianceTable::CovarianceTable(const SpectralParams& p, double r_max) : p_(p), r_max_(r_max) {
  if (!(r_max > 0.0)) throw DomainError("covariance table needs r_max > 0");
  const double lam = p.lambda();
  h_ = std::min(0.02, 0.04 / std::sqrt(lam));
  const int cells = std::max(1, static_cast<int>(std::ceil(r_max / h_)));
  h_ = r_max / cells;
  std::vector<double> radii(cells + 1);
  for (int i = 0; i <= cells; ++i) radii[i] = i * h_;
  radii.back() = r_max;
  auto path = spherical_F_ode_path(p, radii);
  f_.resize(cells + 1);
  d_.resize(cells + 1);
  s_.resize(cells + 1);
  const double two_sigma = 2.0 * p.sigma();
  for (int i = 0; i <= cells; ++i) {
    f_[i] = path[i].f;
    d_[i] = path[i].df;
    if (i == 0)
      s_[i] = -lam / p.n();
    else
      s_[i] = -two_sigma * std::cosh(radii[i]) / std::sinh(radii[i]) * d_[i] - lam * f_[i];
  }
  // below this radius the power series is used for 1 - F
  series_cut_ = std::min(r_max, 0.5 / std::sqrt(lam));
}

double CovarianceTable::operator()(double r) const {
  if (r < 0.0 || r > r_max_ * (1.0 + 1e-12)) throw DomainError("radius outside the covariance table");
  double x = r / h_;
  int i = std::min(static_cast<int>(x), static_cast<int>(f_.size()) - 2);
  double t = x - i;
  double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  double h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  double h10 = t - 6 * t3 + 8 * t4 - 3 * t5;
  double h20 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
  double h21 = 0.5 * t3 - t4 + 0.5 * t5;
  double h11 = -4 * t3 + 7 * t4 - 3 * t5;
  double h01 = 10 * t3 - 15 * t4 + 6 * t5;
  double hh = h_ * h_;
  return f_[i] * h00 + h_ * d_[i] * h10 + hh * s_[i] * h20 + hh * s_[i + 1] * h21 + h_ * d_[i + 1] * h11 +
         f_[i + 1] * h01;
}

double CovarianceTable::one_minus(double r) const {
  if (r <= series_cut_) return spherical_F_series(p_, r).one_minus_f;
  return 1.0 - (*this)(r);
}

}  // namespace hyperwave
