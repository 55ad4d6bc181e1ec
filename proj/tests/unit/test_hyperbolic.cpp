#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "apf/error.hpp"
#include "apf/hyperbolic/geometry.hpp"
#include "apf/hyperbolic/main_term.hpp"
#include "apf/hyperbolic/orbit.hpp"
#include "apf/hyperbolic/remainder.hpp"
#include "doctest.h"

using namespace apf;
using namespace apf::hyp;
using std::numbers::pi;

namespace {

const MoebiusMap kS = MoebiusMap::integer(0, -1, 1, 0);
const MoebiusMap kT = MoebiusMap::integer(1, 1, 0, 1);

// Brute-force N(s, z, w) for PSL(2, Z): every integer matrix with entries in [-K, K] and
// determinant one, halved for the +/- identification.
std::size_t brute_orbit_count(double s, HPoint z, HPoint w, int K) {
  std::size_t n = 0;
  const std::complex<double> zc = z.as_complex(), wc = w.as_complex();
  const double limit = (std::cosh(s) - 1) / 2 * (1 + 1e-12);
  for (int a = -K; a <= K; ++a)
    for (int b = -K; b <= K; ++b)
      for (int c = -K; c <= K; ++c)
        for (int d = -K; d <= K; ++d) {
          if (a * d - b * c != 1) continue;
          const auto gw = (double(a) * wc + double(b)) / (double(c) * wc + double(d));
          const double u = std::norm(zc - gw) / (4 * zc.imag() * gw.imag());
          if (u <= limit) ++n;
        }
  return n / 2;
}

MoebiusMap random_word(std::mt19937_64& rng, int length) {
  MoebiusMap g;
  std::uniform_int_distribution<int> pick(0, 2);
  for (int k = 0; k < length; ++k) {
    const int p = pick(rng);
    g = compose(g, p == 0 ? kS : p == 1 ? kT : kT.inverse());
  }
  return g;
}

SpectralData one_small_eig() {
  SpectralData sd = SpectralData::modular_default();
  sd.small_eigs.push_back({0.25, {1.0, 0.0}});
  return sd;
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance(kI, kI) == 0.0);
  CHECK(distance(kI, HPoint::create(0, 2)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const auto p = HPoint::create(1, 1);
  CHECK(std::abs(distance(kI, p) - distance(p, kI)) < 1e-15);
  CHECK(point_pair_invariant(kI, HPoint::create(0, 2)) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK_THROWS_AS(HPoint::create(0, -1), Error);
}

TEST_CASE("apply_map examples") {
  CHECK(apply_map(MoebiusMap{}, HPoint::create(0.3, 2)) == HPoint::create(0.3, 2));
  const auto si = apply_map(kS, kI);
  CHECK(std::abs(si.x) < 1e-15);
  CHECK(si.y == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(apply_map(kT, kI) == HPoint::create(1, 1));
  CHECK_THROWS_AS(MoebiusMap::integer(1, 1, 1, 1), Error);
  CHECK_THROWS_AS(MoebiusMap::real(2, 0, 0, 2), Error);
}

TEST_CASE("point parsing") {
  CHECK(parse_point("i") == kI);
  CHECK(parse_point("2i") == HPoint::create(0, 2));
  CHECK(parse_point("0.5+1.5i") == HPoint::create(0.5, 1.5));
  CHECK(parse_point("-0.5+i") == HPoint::create(-0.5, 1));
  CHECK(parse_point("0.25,3") == HPoint::create(0.25, 3));
  CHECK_THROWS_AS(parse_point("banana"), Error);
  CHECK_THROWS_AS(parse_point("1-2i"), Error);
}

TEST_CASE("isometry invariance and exact determinants") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ux(-2, 2), uy(0.2, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_word(rng, 1 + trial % 8);
    REQUIRE(g.is_integer());
    const auto e = g.integer_entries();
    CHECK(e.a * e.d - e.b * e.c == 1);
    const auto h = compose(g, g.inverse());
    CHECK(h == MoebiusMap{});
    const auto z = HPoint::create(ux(rng), uy(rng)), w = HPoint::create(ux(rng), uy(rng));
    const double d0 = distance(z, w);
    CHECK(std::abs(distance(apply_map(g, z), apply_map(g, w)) - d0) < 1e-12 * std::max(1.0, d0));
  }
  // +g and -g are the same element
  CHECK(MoebiusMap::integer(-1, 0, 0, -1) == MoebiusMap{});
}

TEST_CASE("orbit counts for PSL(2, Z)") {
  const auto group = GroupDescriptor::modular();
  CHECK(count_orbit(group, 0, kI, kI).count() == 2);
  std::size_t prev = 0;
  for (double s : {1.0, 2.0, 3.0}) {
    const auto n = count_orbit(group, s, kI, kI).count();
    CHECK(n >= prev);
    CHECK(n == brute_orbit_count(s, kI, kI, 5));
    prev = n;
  }
  const auto z = HPoint::create(0.2, 1.3), w = HPoint::create(-0.4, 0.9);
  for (double s : {1.5, 3.0}) {
    const auto zw = count_orbit(group, s, z, w).count();
    CHECK(zw == count_orbit(group, s, w, z).count());
    CHECK(zw == brute_orbit_count(s, z, w, 6));
  }
  const auto ball = count_orbit(group, 8, kI, kI);
  CHECK(ball.complete);
  CHECK(std::is_sorted(ball.distances.begin(), ball.distances.end()));
  for (double s = 5; s <= 8; s += 0.5) {
    const double ratio = ball.count_within(s) / (3 * std::exp(s));
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.2);
  }
}

TEST_CASE("generator search agrees with the integer scan") {
  auto group = GroupDescriptor::from_generators({kS, kT});
  const auto z = HPoint::create(0.1, 1.2);
  for (double s : {1.0, 2.5}) {
    const auto bfs = count_orbit(group, s, z, kI);
    CHECK_FALSE(bfs.complete);
    CHECK_FALSE(bfs.completeness_note.empty());
    CHECK(bfs.count() == count_orbit(GroupDescriptor::modular(), s, z, kI).count());
  }
}

TEST_CASE("main term examples") {
  const auto sd = SpectralData::modular_default();
  CHECK(main_term(sd, 0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(main_term(sd, 1) == doctest::Approx(3 * std::exp(1.0)).epsilon(1e-15));
  CHECK(main_term(sd, 1) == doctest::Approx(8.1548).epsilon(1e-4));
  const double expect = 3 + std::sqrt(pi) * boost::math::tgamma(0.25) / boost::math::tgamma(1.75);
  CHECK(main_term(one_small_eig(), 0) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("main term integral matches quadrature") {
  SpectralData sd = one_small_eig();
  sd.quarter_sum = {0.3, 0.1};
  sd.eisenstein_const = {-0.7, 0.2};
  const double s = 2.7;
  const int n = 2000;
  double acc = main_term(sd, 0) + main_term(sd, s);
  for (int k = 1; k < n; ++k) acc += (k % 2 ? 4 : 2) * main_term(sd, s * k / n);
  CHECK(main_term_integral(sd, s) == doctest::Approx(acc * s / (3 * n)).epsilon(1e-11));
  CHECK(main_term_integral(sd, 0) == 0.0);
}

TEST_CASE("spectral data files") {
  std::istringstream in("# custom\nvolume = pi/3\nsmall_eig = 0.25,1,0\nquarter_sum = 0.5\neisenstein_const = 1,-2\n");
  const auto sd = SpectralData::parse(in);
  CHECK(sd.volume == doctest::Approx(pi / 3).epsilon(1e-15));
  REQUIRE(sd.small_eigs.size() == 1);
  CHECK(sd.small_eigs[0].t_abs == 0.25);
  CHECK(sd.quarter_sum == std::complex<double>(0.5, 0));
  CHECK(sd.eisenstein_const == std::complex<double>(1, -2));
  std::istringstream bad_key("volume = 1\ncolour = 2\n");
  CHECK_THROWS_AS(SpectralData::parse(bad_key), Error);
  std::istringstream bad_eig("volume = 1\nsmall_eig = 0.7,1,0\n");
  CHECK_THROWS_AS(SpectralData::parse(bad_eig), Error);
}

TEST_CASE("remainder e") {
  const auto sd = SpectralData::modular_default();
  const auto group = GroupDescriptor::modular();
  CHECK(remainder_e(group, sd, 0, kI, kI) == doctest::Approx(-1.0).epsilon(1e-15));

  const auto ball = count_orbit(group, 8, kI, kI);
  // Jumps of e at an orbit distance are integers times e^{-s/2}.
  const double d = *std::upper_bound(ball.distances.begin(), ball.distances.end(), 3.0);
  const double jump = (remainder_e(ball, sd, d) - remainder_e(ball, sd, d - 1e-9)) * std::exp(d / 2);
  CHECK(jump >= 1);
  CHECK(std::abs(jump - std::round(jump)) < 1e-5);

  double mean = 0;
  const int n = 3000;
  for (int k = 0; k < n; ++k) mean += std::abs(remainder_e(ball, sd, 5 + 3 * (k + 0.5) / n)) / n;
  CHECK(mean <= 10);
  CHECK_THROWS_AS(remainder_e(ball, sd, 9), Error);
}

TEST_CASE("squared remainder of N against itself vanishes") {
  const auto ball = count_orbit(GroupDescriptor::modular(), 6, kI, kI);
  const auto& dist = ball.distances;
  auto N = [&](double s) {
    return static_cast<double>(std::upper_bound(dist.begin(), dist.end(), s) - dist.begin());
  };
  CHECK(integrate_squared_remainder(dist, N, 3, 4) < 1e-14);
}

TEST_CASE("variance window") {
  const auto sd = SpectralData::modular_default();
  const auto ball = count_orbit(GroupDescriptor::modular(), 6, kI, kI);
  std::vector<double> ratio;
  for (double T : {3.0, 4.0, 5.0}) {
    const double H = variance_window(ball, sd, T);
    ratio.push_back(H / T);
    const double step = 1e-3;
    const double naive = variance_window_fixed_step(ball, sd, T, step);
    CHECK(std::abs(naive - H) <= variance_fixed_step_bound(ball, sd, T, step));
  }
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  CHECK(*lo > 0);
  CHECK(*hi < 1.0);
}

TEST_CASE("G3") {
  const auto sd = SpectralData::modular_default();
  const auto ball = count_orbit(GroupDescriptor::modular(), 4, kI, kI);
  CHECK(integrated_remainder_G3(ball, sd, 0) == 0.0);
  // Continuity across an orbit distance.
  const double d = *std::upper_bound(ball.distances.begin(), ball.distances.end(), 2.0);
  CHECK(std::abs(integrated_remainder_G3(ball, sd, d + 1e-9) - integrated_remainder_G3(ball, sd, d - 1e-9)) < 1e-7);
  // Exact step-function integral against midpoint quadrature: error O(step).
  const double exact = integrated_remainder_G3(ball, sd, 1);
  double prev_gap = 1e300;
  for (double step : {1e-2, 1e-3, 1e-4}) {
    const double gap = std::abs(integrated_remainder_G3_fixed_step(ball, sd, 1, step) - exact);
    CHECK(gap <= ball.count_within(1) * step);
    CHECK(gap <= prev_gap);
    prev_gap = gap;
  }
  double sum = 0;
  for (std::size_t k = 0; k < ball.count_within(1); ++k) sum += 1 - ball.distances[k];
  CHECK(exact == doctest::Approx((sum - main_term_integral(sd, 1)) * std::exp(-0.5)).epsilon(1e-13));
}
