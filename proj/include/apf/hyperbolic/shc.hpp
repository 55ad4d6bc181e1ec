#pragma once

#include <complex>

namespace apf::hyp {

using Complex = std::complex<double>;

/// Selberg/Harish-Chandra transform of the indicator of the ball of radius R:
///   h_R(t) = 2^{3/2} int_{-R}^{R} (cosh R - cosh u)^{1/2} e^{i t u} du.
/// Adaptive quadrature after u = R - v^2, which removes the endpoint square root.
Complex shc_integral(double R, Complex t, double rel_tol = 1e-12);

/// 2 sqrt(2 pi sinh R) Re(e^{itR} Gamma(it)/Gamma(3/2+it) 2F1(-1/2, 3/2; 1-it; 1/(1-e^{2R}))),
/// for real t != 0 and R > log(2)/2.
double shc_hypergeometric(double R, double t);

/// Leading large-R form 2 sqrt(pi) e^{R/2} Re(e^{itR} Gamma(it)/Gamma(3/2+it)), real t != 0.
double shc_asymptotic(double R, double t);

/// Imaginary argument t = i tau, 0 < tau <= 1/2:
///   sqrt(2 pi sinh R) e^{R tau} Gamma(tau)/Gamma(3/2+tau).
double shc_imag(double R, double tau);

/// Small-radius form 2 pi R^2 J_1(Rt)/(Rt) sqrt(sinh R / R), 0 < R <= 1.
Complex shc_small_R(double R, Complex t);

/// Exact h_R(i/2) = 2 pi (cosh R - 1), the area of the ball.
double shc_at_i_half(double R);

/// Leading terms of h_R(0): 4 (R + 2(log 2 - 1)) e^{R/2}.
double shc_at_zero_leading(double R);

/// Fourier partner of h_R: 2^{3/2} (cosh R - cosh u)^{1/2} for |u| <= R, else 0.
double g_transform(double R, double u);

/// 4 pi sinh^2(delta/2): area of the radius-delta ball, the k_delta normalizer.
double ball_area(double delta);

/// Transform of k^{+/-}: h_{s +/- delta}(t) h_delta(t) / (4 pi sinh^2(delta/2)).
Complex h_pm(double s, double delta, Complex t, int sign);

/// int_R h^{+/-}(t) dt, through 2 pi int g_{s +/- delta}(v) g_delta(v) dv / (4 pi sinh^2(delta/2)).
double h_pm_integral(double s, double delta, int sign);

}  // namespace apf::hyp
