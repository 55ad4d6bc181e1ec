#include "apf/hyperbolic/shc.hpp"

#include <cmath>
#include <numbers>

#include "../quadrature.hpp"
#include "apf/error.hpp"
#include "apf/special.hpp"

namespace apf::hyp {

namespace {

constexpr double kPi = std::numbers::pi;

// (cosh R - cosh(R - v^2))^{1/2} without cancellation.
double sqrt_cosh_gap(double R, double v2) {
  return std::sqrt(2 * std::sinh(R - v2 / 2) * std::sinh(v2 / 2));
}

}  // namespace

Complex shc_integral(double R, Complex t, double rel_tol) {
  require(R > 0, "h_R: R must be positive");
  const double a = t.real(), b = t.imag();
  const double v_max = std::sqrt(R);
  // Even integrand: h = 2^{3/2} * 2 int_0^R sqrt(cosh R - cosh u) cos(t u) du, u = R - v^2.
  auto weight = [&](double v) { return 2 * v * sqrt_cosh_gap(R, v * v); };
  auto re_part = [&](double v) {
    const double u = R - v * v;
    return weight(v) * std::cos(a * u) * std::cosh(b * u);
  };
  const double scale = 4 * std::numbers::sqrt2;
  const double re = detail::integrate(re_part, 0.0, v_max, rel_tol).value;
  double im = 0;
  if (a != 0 && b != 0) {
    auto im_part = [&](double v) {
      const double u = R - v * v;
      return -weight(v) * std::sin(a * u) * std::sinh(b * u);
    };
    im = detail::integrate(im_part, 0.0, v_max, rel_tol).value;
  }
  return {scale * re, scale * im};
}

double shc_hypergeometric(double R, double t) {
  require(R > 0.5 * std::log(2.0), "hypergeometric regime needs R > log(2)/2");
  require(t != 0, "hypergeometric regime needs t != 0");
  const Complex it(0, t);
  const Complex ratio = special::gamma_ratio(it, 1.5 + it);
  const double x = 1.0 / (1.0 - std::exp(2 * R));
  const Complex F = special::hyp2f1(-0.5, 1.5, 1.0 - it, x);
  const Complex phase = std::polar(1.0, t * R);
  return 2 * std::sqrt(2 * kPi * std::sinh(R)) * (phase * ratio * F).real();
}

double shc_asymptotic(double R, double t) {
  require(R > 0, "h_R: R must be positive");
  require(t != 0, "asymptotic regime needs t != 0");
  const Complex it(0, t);
  const Complex ratio = special::gamma_ratio(it, 1.5 + it);
  return 2 * std::sqrt(kPi) * std::exp(R / 2) * (std::polar(1.0, t * R) * ratio).real();
}

double shc_imag(double R, double tau) {
  require(R > 0, "h_R: R must be positive");
  require(tau > 0 && tau <= 0.5, "imaginary regime needs 0 < |t| <= 1/2");
  return std::sqrt(2 * kPi * std::sinh(R)) * std::exp(R * tau) * std::tgamma(tau) / std::tgamma(1.5 + tau);
}

Complex shc_small_R(double R, Complex t) {
  require(R > 0, "h_R: R must be positive");
  return 2 * kPi * R * R * special::bessel_j1_over_z(R * t) * std::sqrt(std::sinh(R) / R);
}

double shc_at_i_half(double R) { return 2 * kPi * (std::cosh(R) - 1); }

double shc_at_zero_leading(double R) { return 4 * (R + 2 * (std::log(2.0) - 1)) * std::exp(R / 2); }

double g_transform(double R, double u) {
  require(R > 0, "g_R: R must be positive");
  const double au = std::abs(u);
  if (au >= R) return 0.0;
  // cosh R - cosh u = 2 sinh((R+u)/2) sinh((R-u)/2)
  return 2 * std::numbers::sqrt2 * std::sqrt(2 * std::sinh((R + au) / 2) * std::sinh((R - au) / 2));
}

double ball_area(double delta) {
  const double sh = std::sinh(delta / 2);
  return 4 * kPi * sh * sh;
}

Complex h_pm(double s, double delta, Complex t, int sign) {
  require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  require(s > delta, "need s > delta");
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  return shc_integral(s + sign * delta, t) * shc_integral(delta, t) / ball_area(delta);
}

double h_pm_integral(double s, double delta, int sign) {
  require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  require(s > delta, "need s > delta");
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  const double R = s + sign * delta;
  const double edge = std::min(R, delta);
  // 2 int_0^edge g_R(v) g_delta(v) dv, with v = edge - w^2 at the square-root end
  auto f = [&](double wv) {
    const double v = edge - wv * wv;
    return 2 * wv * g_transform(R, v) * g_transform(delta, v);
  };
  const double integral = 2 * detail::integrate(f, 0.0, std::sqrt(edge), 1e-12).value;
  return 2 * kPi * integral / ball_area(delta);
}

}  // namespace apf::hyp
