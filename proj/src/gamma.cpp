#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "specfun.hpp"

namespace hyperwave {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z) for Im z >= 0 without overflow
cplx log_sin_pi(cplx z) {
  if (z.imag() < 5.0) return std::log(std::sin(std::numbers::pi * z));
  const cplx i(0.0, 1.0);
  cplx w = std::numbers::pi * z;
  return -i * w + std::log(1.0 - std::exp(2.0 * i * w)) + std::log(cplx(0.0, 0.5));
}

}  // namespace

cplx log_gamma_complex(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw PoleError("log_gamma_complex: pole at a nonpositive integer");
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  if (z.imag() < 0.0) return std::conj(log_gamma_complex(std::conj(z)));
  return std::log(std::numbers::pi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

}  // namespace hyperwave
