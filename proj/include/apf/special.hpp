#pragma once

#include <complex>

namespace apf::special {

using Complex = std::complex<double>;

/// log Gamma(z) on the principal sheet up to multiples of 2 pi i (Lanczos, g = 7).
Complex log_gamma(Complex z);

/// Gamma(z) for complex z away from the poles.
Complex gamma(Complex z);

/// Gamma(a) / Gamma(b) evaluated through log-gamma differences.
Complex gamma_ratio(Complex a, Complex b);

/// Bessel J_1 for complex argument: power series for |z| < 17, Hankel expansion beyond.
Complex bessel_j1(Complex z);

/// J_1(z) / z with the z -> 0 limit 1/2.
Complex bessel_j1_over_z(Complex z);

/// Gauss 2F1(a, b; c; x) by its power series; requires |x| < 1.
Complex hyp2f1(Complex a, Complex b, Complex c, double x);

}  // namespace apf::special
