#include "apf/hyperbolic/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "../quadrature.hpp"
#include "apf/error.hpp"
#include "apf/hyperbolic/shc.hpp"

namespace apf::hyp {

double ball_indicator(double s, double u) { return (u >= 0 && u <= (std::cosh(s) - 1) / 2) ? 1.0 : 0.0; }

double ball_convolution(double R, double delta, double u) {
  require(R > 0 && delta > 0, "ball_convolution needs R > 0 and delta > 0");
  require(u >= 0, "u must be >= 0");
  const double D = 2 * std::asinh(std::sqrt(u));
  if (D + delta <= R) return 1.0;
  if (D >= R + delta) return 0.0;
  const double chD = std::cosh(D), shD = std::sinh(D), chR = std::cosh(R);
  // v at polar coordinates (rho, theta) around w, z on the ray theta = 0:
  // cosh d(z, v) = cosh D cosh rho - sinh D sinh rho cos theta <= cosh R
  auto angular = [&](double rho) {
    if (rho == 0) return D <= R ? 2 * std::numbers::pi : 0.0;
    const double x = (chD * std::cosh(rho) - chR) / (shD * std::sinh(rho));
    return 2 * std::acos(std::clamp(x, -1.0, 1.0)) * std::sinh(rho);
  };
  // The clamp releases at rho = |R - D|, beyond which the arc length grows like a square root.
  // rho = kink + v^2 makes that piece smooth; the piece below the kink is already smooth.
  const double kink = std::abs(R - D);
  double total = kink > 0 ? detail::integrate(angular, 0.0, kink, 1e-12).value : 0.0;
  total += detail::integrate([&](double v) { return v > 0 ? 2 * v * angular(kink + v * v) : 0.0; }, 0.0, std::sqrt(delta - kink),
                             1e-12)
               .value;
  return std::clamp(total / ball_area(delta), 0.0, 1.0);
}

KernelPair smoothed_kernels(double s, double delta, std::span<const double> u_grid) {
  require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  require(s > delta, "need s > delta");
  KernelPair kp;
  kp.s = s;
  kp.delta = delta;
  kp.u.assign(u_grid.begin(), u_grid.end());
  for (double u : u_grid) {
    kp.k_minus.push_back(ball_convolution(s - delta, delta, u));
    kp.k_plus.push_back(ball_convolution(s + delta, delta, u));
  }
  return kp;
}

}  // namespace apf::hyp
