#pragma once

#include <functional>
#include <vector>

#include "apf/hyperbolic/main_term.hpp"
#include "apf/hyperbolic/orbit.hpp"

namespace apf::hyp {

/// e(s) = (N(s) - M(s)) e^{-s/2}, using an already enumerated ball (s <= ball.radius).
double remainder_e(const OrbitBall& ball, const SpectralData& sd, double s);
double remainder_e(const GroupDescriptor& group, const SpectralData& sd, double s, HPoint z, HPoint w);

/// int_a^b ((N(s) - main(s)) e^{-s/2})^2 ds where N counts the sorted `distances` <= s.
/// N is constant between consecutive distances; each such piece is cut into parts no longer
/// than `max_piece` and integrated with 20-point Gauss-Legendre.
double integrate_squared_remainder(const std::vector<double>& distances,
                                   const std::function<double(double)>& main, double a, double b,
                                   double max_piece = 0.05);

/// H(T) = int_T^{T+1} |e(s)|^2 ds, jump-aware.
double variance_window(const OrbitBall& ball, const SpectralData& sd, double T, double max_piece = 0.05);
double variance_window(const GroupDescriptor& group, const SpectralData& sd, double T, HPoint z, HPoint w,
                       double max_piece = 0.05);

/// Midpoint rule on a uniform grid, blind to the jumps of N. Reference for the jump-aware value.
double variance_window_fixed_step(const OrbitBall& ball, const SpectralData& sd, double T, double step);

/// 2 (jumps in [T, T+1]) max|e|^2 step: the midpoint rule's worst case from the jumps alone.
double variance_fixed_step_bound(const OrbitBall& ball, const SpectralData& sd, double T, double step);

/// G_3(s, z) = e^{-s/2} int_0^s (N(x,z,z) - M(x,z,z)) dx. The step-function integral is the
/// finite sum of (s - d_k) over distances d_k <= s and the main term integrates in closed form,
/// so G_3(0) is exactly 0. The ball must have z == w and radius >= s.
double integrated_remainder_G3(const OrbitBall& ball, const SpectralData& sd, double s);
double integrated_remainder_G3(const GroupDescriptor& group, const SpectralData& sd, double s, HPoint z);

/// The same integral by the midpoint rule with the given step.
double integrated_remainder_G3_fixed_step(const OrbitBall& ball, const SpectralData& sd, double s, double step);

}  // namespace apf::hyp
