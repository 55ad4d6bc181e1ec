#include "apf/hyperbolic/remainder.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "apf/error.hpp"

namespace apf::hyp {

namespace {

void require_radius(const OrbitBall& ball, double s) {
  if (s > ball.radius + kDistanceTieTolerance)
    fail(ErrorCode::kOutOfRange, "orbit ball radius " + std::to_string(ball.radius) + " is smaller than s");
}

double count_at(const std::vector<double>& distances, double s) {
  return static_cast<double>(
      std::upper_bound(distances.begin(), distances.end(), s + kDistanceTieTolerance) - distances.begin());
}

// Distinct jump abscissae strictly inside (a, b).
std::vector<double> jumps_between(const std::vector<double>& distances, double a, double b) {
  std::vector<double> out;
  for (auto it = std::upper_bound(distances.begin(), distances.end(), a); it != distances.end() && *it < b; ++it)
    if (out.empty() || *it != out.back()) out.push_back(*it);
  return out;
}

}  // namespace

double remainder_e(const OrbitBall& ball, const SpectralData& sd, double s) {
  require(s >= 0, "remainder needs s >= 0");
  require_radius(ball, s);
  return (count_at(ball.distances, s) - main_term(sd, s)) * std::exp(-s / 2);
}

double remainder_e(const GroupDescriptor& group, const SpectralData& sd, double s, HPoint z, HPoint w) {
  return remainder_e(count_orbit(group, s, z, w), sd, s);
}

double integrate_squared_remainder(const std::vector<double>& distances,
                                   const std::function<double(double)>& main, double a, double b,
                                   double max_piece) {
  require(a <= b, "integration range must satisfy a <= b");
  require(max_piece > 0, "piece length must be positive");
  std::vector<double> breaks{a};
  for (double j : jumps_between(distances, a, b)) breaks.push_back(j);
  breaks.push_back(b);

  double total = 0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k], hi = breaks[k + 1];
    if (hi <= lo) continue;
    // N is constant on the open piece; its value is the count at the midpoint.
    const double n = count_at(distances, 0.5 * (lo + hi));
    const auto parts = static_cast<int>(std::ceil((hi - lo) / max_piece));
    const double width = (hi - lo) / parts;
    for (int p = 0; p < parts; ++p) {
      const double x0 = lo + p * width;
      const double x1 = p + 1 == parts ? hi : x0 + width;
      total += boost::math::quadrature::gauss<double, 20>::integrate(
          [&](double s) {
            const double e = n - main(s);
            return e * e * std::exp(-s);
          },
          x0, x1);
    }
  }
  return total;
}

double variance_window(const OrbitBall& ball, const SpectralData& sd, double T, double max_piece) {
  require(T >= 1, "variance window needs T >= 1");
  require_radius(ball, T + 1);
  return integrate_squared_remainder(
      ball.distances, [&](double s) { return main_term(sd, s); }, T, T + 1, max_piece);
}

double variance_window(const GroupDescriptor& group, const SpectralData& sd, double T, HPoint z, HPoint w,
                       double max_piece) {
  require(T >= 1, "variance window needs T >= 1");
  return variance_window(count_orbit(group, T + 1, z, w), sd, T, max_piece);
}

double variance_window_fixed_step(const OrbitBall& ball, const SpectralData& sd, double T, double step) {
  require(T >= 1, "variance window needs T >= 1");
  require(step > 0 && step <= 1, "step must lie in (0, 1]");
  require_radius(ball, T + 1);
  const auto n = static_cast<long>(std::llround(1.0 / step));
  const double h = 1.0 / static_cast<double>(n);
  double total = 0;
  for (long k = 0; k < n; ++k) {
    const double e = remainder_e(ball, sd, T + (static_cast<double>(k) + 0.5) * h);
    total += e * e;
  }
  return total * h;
}

double variance_fixed_step_bound(const OrbitBall& ball, const SpectralData& sd, double T, double step) {
  require_radius(ball, T + 1);
  const auto jumps = jumps_between(ball.distances, T, T + 1);
  double peak = 0;
  auto probe = [&](double s) {
    const double e = remainder_e(ball, sd, s);
    peak = std::max(peak, e * e);
  };
  probe(T);
  probe(T + 1);
  for (double j : jumps) {
    probe(j);
    // Left limit: count strictly below the jump.
    const double n_left = static_cast<double>(std::lower_bound(ball.distances.begin(), ball.distances.end(), j) -
                                              ball.distances.begin());
    const double e = (n_left - main_term(sd, j)) * std::exp(-j / 2);
    peak = std::max(peak, e * e);
  }
  return 2.0 * static_cast<double>(jumps.size()) * peak * step;
}

double integrated_remainder_G3(const OrbitBall& ball, const SpectralData& sd, double s) {
  require(s >= 0, "G3 needs s >= 0");
  require_radius(ball, s);
  double n_integral = 0;
  for (double d : ball.distances) {
    if (d > s) break;
    n_integral += s - d;
  }
  return std::exp(-s / 2) * (n_integral - main_term_integral(sd, s));
}

double integrated_remainder_G3(const GroupDescriptor& group, const SpectralData& sd, double s, HPoint z) {
  return integrated_remainder_G3(count_orbit(group, s, z, z), sd, s);
}

double integrated_remainder_G3_fixed_step(const OrbitBall& ball, const SpectralData& sd, double s, double step) {
  require(s >= 0, "G3 needs s >= 0");
  require(step > 0, "step must be positive");
  require_radius(ball, s);
  if (s == 0) return 0;
  const auto n = std::max<long>(1, std::lround(s / step));
  const double h = s / static_cast<double>(n);
  double total = 0;
  for (long k = 0; k < n; ++k) {
    const double x = (static_cast<double>(k) + 0.5) * h;
    total += count_at(ball.distances, x) - main_term(sd, x);
  }
  return std::exp(-s / 2) * total * h;
}

}  // namespace apf::hyp
