#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hypgeo.hpp"
#include "parallel.hpp"

namespace hyperwave {

double hermite(int q, double x);
long double hermite_extended(int q, long double x);
std::vector<double> hermite_all(int q_max, double x);  // H_0..H_qmax

// A_0 = Phi(t), A_q = -H_{q-1}(t) phi(t) / q!
std::vector<double> indicator_coeffs(double t, int q_max);
double psi_coeff(int q, double t);

double leray_b(int q);            // H_q(0) phi(0) / q!
double leray_B_norm_sq(int two_l);  // binom(2l, l) / (2 pi 4^l)

struct Projection {
  std::vector<double> coeffs;  // (1/q!) E[G(Z) H_q(Z)]
  int rank;                    // smallest q >= 1 with |coeff| > 1e-10, -1 if none
  bool divergence_flag;
};

// Gauss-Hermite (200 nodes); with breakpoints the Gaussian integral is split there and done piecewise.
Projection project_function(const std::function<double(double)>& G, int q_max,
                            const std::vector<double>& breakpoints = {});

struct FunctionalSample {
  double estimate;           // m(B_R) times the spatial average
  double spatial_noise_var;  // delete-d jackknife over 20 blocks
};

using PointFunctional = std::function<double(double)>;

struct FieldMcConfig {
  int M;                 // spatial points per realization
  int K;                 // realizations
  std::uint64_t seed;
};

// One fresh point set and one exact field draw per realization; every functional is averaged over the same draw.
// result[f][k] holds functional f on realization k.
std::vector<std::vector<FunctionalSample>> field_functionals_mc(const SpectralParams& p, double R,
                                                                const std::vector<PointFunctional>& functionals,
                                                                const FieldMcConfig& cfg,
                                                                const Executor& executor = {});

std::vector<FunctionalSample> polyspectrum_mc(const SpectralParams& p, double R, int q, const FieldMcConfig& cfg,
                                              const Executor& executor = {});

struct ExcursionRun {
  std::vector<FunctionalSample> samples;
  bool nodal_flag;  // t == 0
};

ExcursionRun excursion_volume_mc(const SpectralParams& p, double R, double t, const FieldMcConfig& cfg,
                                 const Executor& executor = {});

// result[e][k] for eps_list[e]
std::vector<std::vector<FunctionalSample>> leray_mc(const SpectralParams& p, double R,
                                                    const std::vector<double>& eps_list, const FieldMcConfig& cfg,
                                                    const Executor& executor = {});

}  // namespace hyperwave
