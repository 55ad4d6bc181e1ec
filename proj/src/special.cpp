#include "apf/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "apf/error.hpp"

namespace apf::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kSeriesRadius = 17.0;

Complex j1_series(Complex z) {
  using LC = std::complex<long double>;
  const LC half = LC(z) / 2.0L;
  const LC q = -half * half;
  LC term = half;  // k = 0
  LC sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / static_cast<long double>(k * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  return Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

Complex j1_hankel(Complex z) {
  // P and Q asymptotic series for nu = 1, truncated at the smallest term.
  const double mu = 4.0;
  Complex P = 1.0, Q = 0.0;
  Complex term = 1.0;
  double prev = 1e300;
  for (int k = 1; k < 80; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k) / z;
    const double mag = std::abs(term);
    if (mag > prev) break;
    prev = mag;
    // k odd -> Q, k even -> P; signs alternate in pairs
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2) Q += sign * term;
    else P += sign * term;
    if (mag < 1e-17) break;
  }
  const Complex chi = z - 0.75 * kPi;
  return std::sqrt(2.0 / (kPi * z)) * (P * std::cos(chi) - Q * std::sin(chi));
}

// log sin(pi z) modulo 2 pi i, without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
  if (std::abs(z.imag()) < 20) return std::log(std::sin(kPi * z));
  if (z.imag() < 0) return std::conj(log_sin_pi(std::conj(z)));
  // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i), and |e^{2 i pi z}| = e^{-2 pi Im z} is tiny.
  const Complex i(0, 1);
  return -i * kPi * z + std::log(std::exp(2.0 * i * kPi * z) - 1.0) - std::log(2.0 * i);
}

}  // namespace

Complex log_gamma(Complex z) {
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex gamma_ratio(Complex a, Complex b) { return std::exp(log_gamma(a) - log_gamma(b)); }

Complex bessel_j1(Complex z) {
  if (std::abs(z) < kSeriesRadius) return j1_series(z);
  // J_1(-z) = -J_1(z); keep the Hankel expansion in the right half-plane.
  if (z.real() < 0) return -j1_hankel(-z);
  return j1_hankel(z);
}

Complex bessel_j1_over_z(Complex z) {
  if (std::abs(z) < 1e-8) return 0.5 - z * z / 16.0;
  return bessel_j1(z) / z;
}

Complex hyp2f1(Complex a, Complex b, Complex c, double x) {
  if (!(std::abs(x) < 1)) fail(ErrorCode::kOutOfRange, "hyp2f1 series needs |x| < 1");
  Complex term = 1.0, sum = 1.0;
  for (int k = 0; k < 200000; ++k) {
    const double kd = k;
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * x;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  fail(ErrorCode::kQuadrature, "hyp2f1 series did not converge");
}

}  // namespace apf::special
