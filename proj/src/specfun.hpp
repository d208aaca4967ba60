#pragma once

#include <complex>
#include <vector>

#include "hypgeo.hpp"

namespace hyperwave {

using cplx = std::complex<double>;

cplx log_gamma_complex(cplx z);

double bessel_j(double nu, double x);
// x^{-nu} J_nu(x), finite at x = 0
double bessel_j_scaled(double nu, double x);

struct Hyp2f1Result {
  cplx value;
  double error;     // absolute error estimate
  bool degraded;    // error estimate above 1e-8 relative
  int precision;    // 0 double, 1 long double, 2 binary128, 3 100 digits, -1 connection formula
};

// Gauss hypergeometric function for real z <= 0.
Hyp2f1Result hyp2f1(cplx a, cplx b, cplx c, double z);

enum class Route { ode, quadrature, hypergeometric, automatic };

struct FValue {
  double value;
  double error;
  bool degraded;
};

struct OdeOptions {
  double rtol = 1e-12;
  double r0 = 1e-3;
};

inline constexpr double kPfaffThreshold = 0.99;  // tanh^2 r above which auto switches to the ODE

FValue spherical_F(const SpectralParams& p, double r, Route route);
double spherical_F(const SpectralParams& p, double r);

// Small-r series of F (and F') in powers of -sinh^2 r; accurate while lambda sinh^2 r is moderate.
struct SeriesValue {
  double f;
  double df;
  double one_minus_f;
};
SeriesValue spherical_F_series(const SpectralParams& p, double r);

struct OdeSample {
  double r;
  double f;
  double df;
};
// Single pass of the radial ODE through an increasing list of radii.
std::vector<OdeSample> spherical_F_ode_path(const SpectralParams& p, const std::vector<double>& radii,
                                            const OdeOptions& opt = {});

double spherical_F_quadrature(const SpectralParams& p, double r, double* error = nullptr);

cplx harish_chandra_c(const SpectralParams& p);
double spectral_density(const SpectralParams& p);

struct AsymptoticBand {
  double main_term;
  double error_bound;
};

AsymptoticBand asymptotic_tail(const SpectralParams& p, double r);
double tail_main_term(const SpectralParams& p, double r);
// 1.5 x max |F - main| alpha^2 sinh^{2+sigma} over the grid (floored at 1e-4)
double calibrate_tail_constant(int n, const std::vector<double>& alphas, const std::vector<double>& radii);
double tail_constant(int n);

// Oscillation envelope of F, used to measure disagreement near zeros.
double F_envelope(const SpectralParams& p, double r);

double bessel_approx(const SpectralParams& p, double r);
double berry_covariance(int n, double lambda, double s);

}  // namespace hyperwave
