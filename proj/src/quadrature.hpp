#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

#include "apf/error.hpp"

namespace apf::detail {

struct QuadResult {
  double value = 0;
  double error = 0;
};

// Adaptive Gauss-Kronrod (31 points). Throws kQuadrature if the error estimate stays
// above max(rel_tol * |value|, abs_floor).
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-12, double abs_floor = 1e-14,
                     unsigned max_depth = 20) {
  double err = 0, l1 = 0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
  if (!std::isfinite(value) || err > std::max(100 * rel_tol * std::abs(value), 100 * rel_tol * l1 + abs_floor))
    fail(ErrorCode::kQuadrature, "tolerance not reached (error estimate " + std::to_string(err) + ")");
  return {value, err};
}

}  // namespace apf::detail
