#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "covtable.hpp"
#include "hypgeo.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace hyperwave {

inline constexpr int kMaxCholeskyPoints = 4000;

struct FieldRealization {
  SpectralParams params;
  std::vector<HyperPoint> points;
  std::vector<double> values;
  std::string provenance;  // "cholesky" or "superposition(N)"
  std::uint64_t seed;
  std::uint64_t stream;
};

std::complex<double> plane_wave(const HyperPoint& x, const SpectralParams& p, const Eigen::VectorXd& u);

// Points stored column-wise as ambient coordinates.
Eigen::MatrixXd ambient_matrix(const std::vector<HyperPoint>& points);
Eigen::MatrixXd distance_matrix(const Eigen::MatrixXd& ambient);
double max_radius(const std::vector<HyperPoint>& points);

Eigen::MatrixXd covariance_matrix(const std::vector<HyperPoint>& points, const CovarianceTable& table);
Eigen::MatrixXd covariance_matrix(const std::vector<HyperPoint>& points, const SpectralParams& p);

// Cholesky factor with escalating diagonal jitter 1e-12 * 10^k, k = 0..4.
class FieldFactor {
 public:
  // factors in place; only the lower triangle is overwritten
  explicit FieldFactor(Eigen::MatrixXd covariance);
  Eigen::VectorXd draw(Stream& stream) const;
  double jitter() const { return jitter_; }
  const Eigen::MatrixXd& lower() const { return l_; }

 private:
  Eigen::MatrixXd l_;
  double jitter_ = 0.0;
};

std::vector<FieldRealization> sample_gaussian_field(const std::vector<HyperPoint>& points, const SpectralParams& p,
                                                    int realizations, std::uint64_t seed,
                                                    const Executor& executor = {});

struct SuperpositionField {
  std::vector<std::complex<double>> complex_values;
  FieldRealization real_field;  // sqrt(2) Re u^N, unit variance
};

SuperpositionField sample_superposition(const std::vector<HyperPoint>& points, const SpectralParams& p, int N,
                                        Stream& stream);

// Covariance of sqrt(2) Re u^N conditional on N drawn directions, with the phases averaged out:
// Re (1/N) sum_j e(x, u_j) conj e(y, u_j)
Eigen::MatrixXd superposition_covariance(const std::vector<HyperPoint>& points, const SpectralParams& p, int N,
                                         Stream& stream);

struct EigenCheck {
  double residual;
  bool step_warning;
};

EigenCheck verify_eigenfunction(const HyperPoint& x, const SpectralParams& p, const Eigen::VectorXd& u, double h);

Eigen::VectorXd random_direction(int n, Stream& stream);

}  // namespace hyperwave
