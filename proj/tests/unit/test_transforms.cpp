#include <cmath>
#include <numbers>
#include <vector>

#include "apf/error.hpp"
#include "apf/hyperbolic/kernels.hpp"
#include "apf/hyperbolic/shc.hpp"
#include "doctest.h"

using namespace apf;
using namespace apf::hyp;
using std::numbers::pi;

TEST_CASE("h_R at i/2 is the ball area") {
  const Complex half_i(0, 0.5);
  for (double R : {0.3, 1.0, 2.5, 5.0}) {
    const Complex h = shc_integral(R, half_i);
    CHECK(std::abs(h.real() - 2 * pi * (std::cosh(R) - 1)) < 1e-8 * std::max(1.0, h.real()));
    CHECK(std::abs(h.imag()) < 1e-12 * std::max(1.0, h.real()));
  }
  CHECK(shc_at_i_half(1) == doctest::Approx(2 * pi * (std::cosh(1.0) - 1)).epsilon(1e-15));
}

TEST_CASE("h_R is real and even on the real line") {
  for (double R : {0.5, 2.0, 6.0})
    for (double t : {0.1, 1.0, 7.5, 30.0}) {
      const Complex a = shc_integral(R, t), b = shc_integral(R, -t);
      CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
      CHECK(std::abs(a.imag()) < 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("h_R(0) against its leading terms") {
  // C(R) = (h_R(0) - leading) e^{R/2}; reference values from an independent 40-digit quadrature.
  const double reference[] = {0.11697094, 0.020787552, 0.0034842136};
  const double Rs[] = {4, 6, 8};
  double prev = 1e300;
  for (int k = 0; k < 3; ++k) {
    const double C = (shc_integral(Rs[k], 0).real() - shc_at_zero_leading(Rs[k])) * std::exp(Rs[k] / 2);
    CHECK(C == doctest::Approx(reference[k]).epsilon(1e-5));
    CHECK(C <= prev);  // the O(e^{-R/2}) envelope fitted at R = 4 covers larger R
    prev = C;
  }
}

TEST_CASE("hypergeometric form equals the integral") {
  for (double R : {0.5, 1.0, 3.0, 7.0})
    for (double t : {0.3, 2.0, 11.0}) {
      const double exact = shc_integral(R, t).real();
      CHECK(std::abs(shc_hypergeometric(R, t) - exact) < 1e-9 * std::max(1.0, std::abs(exact)));
    }
  CHECK_THROWS_AS(shc_hypergeometric(0.2, 1.0), Error);
}

TEST_CASE("asymptotic regime error decays like e^{-3R/2}") {
  // The scaled gap oscillates in sign but stays O(1) while the raw gap falls by four decades.
  for (double t : {1.0, 5.0, 20.0})
    for (double R : {4.0, 6.0, 8.0, 10.0}) {
      const double gap = std::abs(shc_integral(R, t).real() - shc_asymptotic(R, t));
      CHECK(gap * std::exp(1.5 * R) * t * (1 + std::sqrt(t)) < 5);
    }
}

TEST_CASE("small-radius regime") {
  std::vector<double> gap;
  for (double d : {0.2, 0.1, 0.05}) {
    const double normalized = shc_small_R(d, 0).real() / ball_area(d);
    gap.push_back(std::abs(normalized - 1));
    CHECK(gap.back() < d * d);
  }
  CHECK(gap[1] < gap[0]);
  CHECK(gap[2] < gap[1]);
  for (double t : {0.5, 4.0, 20.0}) {
    const double exact = shc_integral(0.05, t).real();
    CHECK(std::abs(shc_small_R(0.05, t).real() - exact) < 1e-2 * std::abs(shc_integral(0.05, 0).real()));
  }
}

TEST_CASE("imaginary regime") {
  for (double R : {2.0, 4.0, 6.0}) {
    const double gap = std::abs(shc_imag(R, 0.5) - shc_at_i_half(R));
    CHECK(gap <= 4 * (1 + 2.0));  // O((1 + 1/|t|) e^{R(1/2 - |t|)}) at |t| = 1/2
    for (double tau : {0.1, 0.3, 0.45}) {
      const double exact = shc_integral(R, Complex(0, tau)).real();
      CHECK(std::abs(shc_imag(R, tau) - exact) <= 4 * (1 + 1 / tau) * std::exp(R * (0.5 - tau)));
    }
  }
}

TEST_CASE("g transform") {
  CHECK(g_transform(1, 0) == doctest::Approx(std::pow(2.0, 1.5) * std::sqrt(std::cosh(1.0) - 1)).epsilon(1e-15));
  CHECK(g_transform(1, 0) == doctest::Approx(2.0841).epsilon(1e-4));
  CHECK(g_transform(1, 1) == 0.0);
  CHECK(g_transform(1, 1.5) == 0.0);
  CHECK(g_transform(1, -0.3) == g_transform(1, 0.3));
}

TEST_CASE("kernel sandwich and exact values") {
  const double s = 2, delta = 0.1;
  std::vector<double> u;
  const double u_s = (std::cosh(s) - 1) / 2, u_out = (std::cosh(s + 2 * delta) - 1) / 2;
  for (int k = 0; k < 100; ++k) u.push_back(1.5 * u_out * k / 99);
  const auto kp = smoothed_kernels(s, delta, u);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double ind = ball_indicator(s, u[k]);
    CHECK(kp.k_minus[k] <= ind + 1e-12);
    CHECK(ind <= kp.k_plus[k] + 1e-12);
    if (u[k] <= u_s) CHECK(kp.k_plus[k] == doctest::Approx(1.0).epsilon(1e-12));
    if (u[k] >= u_out) CHECK(kp.k_plus[k] == 0.0);
    CHECK(kp.k_minus[k] >= 0);
  }
  CHECK_THROWS_AS(smoothed_kernels(0.05, 0.1, u), Error);
}

TEST_CASE("h^{+/-} at i/2") {
  const double s = 3;
  const Complex half_i(0, 0.5);
  std::vector<double> scaled;
  for (double delta : {0.1, 0.05, 0.025})
    for (int sign : {1, -1}) {
      const double gap = std::abs(h_pm(s, delta, half_i, sign).real() - 2 * pi * (std::cosh(s) - 1));
      scaled.push_back(gap / (delta * std::exp(s)));
    }
  for (double c : scaled) CHECK(c < 10);
  // Product form against the direct transforms.
  const Complex t(1.7, 0);
  const Complex direct = shc_integral(s + 0.1, t) * shc_integral(0.1, t) / ball_area(0.1);
  CHECK(std::abs(h_pm(s, 0.1, t, 1) - direct) < 1e-9 * std::abs(direct));
}

TEST_CASE("h^{+/-} integral matches quadrature") {
  // h^+ decays like |t|^{-3}, so |t| <= 100 carries all but ~1e-4 of the mass.
  const double s = 1.5, delta = 0.2;
  const double closed = h_pm_integral(s, delta, 1);
  double acc = 0;
  const double L = 100, dt = 0.02;
  for (double t = -L + dt / 2; t < L; t += dt) acc += h_pm(s, delta, t, 1).real() * dt;
  CHECK(std::abs(acc - closed) < 2e-3 * std::abs(closed));
}
