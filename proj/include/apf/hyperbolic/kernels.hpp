#pragma once

#include <span>
#include <vector>

namespace apf::hyp {

/// k^- and k^+ tabulated on a u-grid.
struct KernelPair {
  double s = 0;
  double delta = 0;
  std::vector<double> u;
  std::vector<double> k_minus;
  std::vector<double> k_plus;
};

/// 1 on [0, (cosh s - 1)/2], else 0.
double ball_indicator(double s, double u);

/// (1_{[0,(cosh R - 1)/2]} * k_delta)(u): the fraction of the radius-delta ball around w
/// lying within distance R of z, where u = u(z, w). Evaluated in geodesic polar
/// coordinates around w.
double ball_convolution(double R, double delta, double u);

/// k^{+/-}(u) = ball_convolution(s +/- delta, delta, u) on each grid point.
KernelPair smoothed_kernels(double s, double delta, std::span<const double> u_grid);

}  // namespace apf::hyp
