#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>
#include <cmath>
#include <numbers>

#include "apf/special.hpp"
#include "doctest.h"

using namespace apf::special;
using std::numbers::pi;

namespace {
double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }
}  // namespace

TEST_CASE("gamma on the real axis") {
  for (double x : {0.1, 0.25, 0.5, 1.0, 1.75, 3.3, 10.0, 25.5, -0.5, -2.5})
    CHECK(rel(gamma(Complex(x, 0)), Complex(boost::math::tgamma(x), 0)) < 1e-13);
}

TEST_CASE("gamma off the axis") {
  for (double y : {0.1, 1.0, 5.0, 20.0, 60.0}) {
    // |Gamma(iy)|^2 = pi/(y sinh(pi y)), |Gamma(1/2 + iy)|^2 = pi/cosh(pi y)
    CHECK(std::abs(std::norm(gamma(Complex(0, y))) / (pi / (y * std::sinh(pi * y))) - 1) < 1e-12);
    CHECK(std::abs(std::norm(gamma(Complex(0.5, y))) / (pi / std::cosh(pi * y)) - 1) < 1e-12);
    // recurrence
    const Complex z(1.5, y);
    CHECK(rel(gamma(z + 1.0), z * gamma(z)) < 1e-12);
  }
  CHECK(rel(gamma_ratio(Complex(0.25, 0), Complex(1.75, 0)),
            Complex(boost::math::tgamma(0.25) / boost::math::tgamma(1.75), 0)) < 1e-13);
  // Large arguments stay finite through the log form.
  const Complex big(0, 300);
  CHECK(std::isfinite(std::abs(gamma_ratio(big, big + 1.5))));
  CHECK(std::abs(std::abs(gamma_ratio(big, big + 1.5)) - std::pow(300.0, -1.5)) < 1e-3 * std::pow(300.0, -1.5));
}

TEST_CASE("Bessel J1") {
  for (double x : {1e-3, 0.5, 3.0, 8.0, 16.9, 17.1, 25.0, 60.0, 200.0})
    CHECK(std::abs(bessel_j1(Complex(x, 0)) - boost::math::cyl_bessel_j(1, x)) < 1e-13 * std::max(1.0, std::abs(boost::math::cyl_bessel_j(1, x))) + 1e-15);
  // J1(ix) = i I1(x)
  for (double x : {0.3, 4.0, 12.0})
    CHECK(rel(bessel_j1(Complex(0, x)), Complex(0, boost::math::cyl_bessel_i(1, x))) < 1e-12);
  CHECK(bessel_j1_over_z(Complex(0, 0)) == Complex(0.5, 0));
  CHECK(std::abs(bessel_j1_over_z(Complex(1e-9, 0)) - 0.5) < 1e-15);
}

TEST_CASE("hypergeometric 2F1 on real parameters") {
  for (double x : {-0.9, -0.3, 0.0, 0.2, 0.7}) {
    const double ref = boost::math::hypergeometric_pFq({-0.5, 1.5}, {0.75}, x);
    CHECK(rel(hyp2f1(-0.5, 1.5, 0.75, x), Complex(ref, 0)) < 1e-12);
  }
  // Elementary case: 2F1(1, 1; 2; x) = -log(1 - x)/x
  CHECK(rel(hyp2f1(1.0, 1.0, 2.0, 0.5), Complex(-std::log(0.5) / 0.5, 0)) < 1e-13);
}
