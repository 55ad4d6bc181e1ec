#include <cmath>
#include <numbers>
#include <random>

#include "apf/arithmetic.hpp"
#include "apf/error.hpp"
#include "apf/moments.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apf;
using std::numbers::pi;

namespace {

SampledFunction two_cos(double Y, double step) {
  SampledFunction f;
  f.step = step;
  const auto n = static_cast<std::size_t>(std::llround(Y / step)) + 1;
  for (std::size_t k = 0; k < n; ++k) f.values.push_back(2 * std::cos(k * step));
  return f;
}

Spectrum one_two_three() { return Spectrum::create({1, 2, 3}, {1, 1, 1}); }

// Mean of (2 cos y)^n over a period by the trapezoid rule, exact for trigonometric
// polynomials of degree below the node count.
double periodic_mean_power(int n) {
  const int m = 64;
  double s = 0;
  for (int k = 0; k < m; ++k) s += std::pow(2 * std::cos(2 * pi * k / m), n);
  return s / m;
}

}  // namespace

TEST_CASE("empirical moments of 2 cos y") {
  const double Y = 2000 * pi;
  const auto f = two_cos(Y, Y / 400000);
  CHECK(std::abs(empirical_moment(f, 2, Y) - 2.0) < 1e-6);
  CHECK(std::abs(empirical_moment(f, 4, Y) - 6.0) < 1e-5);
  CHECK(std::abs(empirical_moment(f, 4, Y) - periodic_mean_power(4)) < 1e-5);
  CHECK(std::abs(empirical_moment(f, 1, Y)) < 1e-6);
}

TEST_CASE("empirical_moment rejects bad horizons") {
  const auto f = two_cos(10, 0.01);
  CHECK_THROWS_AS(empirical_moment(f, 2, 20), Error);
  CHECK_THROWS_AS(empirical_moment(f, 2, 0.01), Error);  // a single interval cannot be Simpson-integrated
}

TEST_CASE("theoretical moments of the resonant spectrum") {
  const auto s = one_two_three();
  const auto r2 = theoretical_moment(s, 2);
  REQUIRE(r2.theoretical);
  CHECK(*r2.theoretical == 6.0);
  CHECK(r2.exact_mode);
  const auto r3 = theoretical_moment(s, 3);
  CHECK(*r3.theoretical == 18.0);
  CHECK(r3.resonance_count == 18);
  const auto r1 = theoretical_moment(s, 1);
  CHECK(*r1.theoretical == 0.0);
  CHECK(r1.resonance_count == 0);
}

TEST_CASE("theoretical moments equal brute-force enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int size = 1 + trial % 6;
    const auto s = oracle::random_integer_spectrum(rng, size, 8);
    for (int n = 1; n <= 4; ++n) {
      const auto r = theoretical_moment(s, n);
      REQUIRE(r.theoretical);
      CHECK(*r.theoretical == oracle::brute_force_moment(s, n));
      CHECK(r.imag_residual <= 1e-12 * std::max(r.amplitude_mass, 1.0));
    }
  }
}

TEST_CASE("floating mode agrees with exact mode on rational data") {
  std::mt19937_64 rng(22);
  const auto s = oracle::random_integer_spectrum(rng, 6, 10);
  MomentOptions floating;
  floating.mode = ResonanceMode::kFloating;
  for (int n = 2; n <= 4; ++n) CHECK(*theoretical_moment(s, n, floating).theoretical == doctest::Approx(*theoretical_moment(s, n).theoretical).epsilon(1e-12));
}

TEST_CASE("scaling by a real factor") {
  std::mt19937_64 rng(23);
  const auto s = oracle::random_integer_spectrum(rng, 5, 9);
  std::vector<Complex> scaled;
  for (auto c : s.coefficients()) scaled.push_back(2.0 * c);
  const auto t = Spectrum::create({s.frequencies().begin(), s.frequencies().end()}, scaled);
  for (int n = 1; n <= 4; ++n) CHECK(*theoretical_moment(t, n).theoretical == std::ldexp(*theoretical_moment(s, n).theoretical, n));
}

TEST_CASE("diagonal law for rationally independent frequencies") {
  const auto s = Spectrum::create({1, std::sqrt(2.0), std::sqrt(3.0)}, {Complex(0.5, 0.2), Complex(-0.3, 0.1), Complex(0.7, 0)});
  double sq = 0;
  for (auto c : s.coefficients()) sq += std::norm(c);
  const auto r2 = theoretical_moment(s, 2);
  CHECK_FALSE(r2.exact_mode);
  CHECK(*r2.theoretical == doctest::Approx(2 * sq).epsilon(1e-14));
  CHECK(*theoretical_moment(s, 3).theoretical == 0.0);
}

TEST_CASE("budget exhaustion is flagged, never silent") {
  std::mt19937_64 rng(24);
  const auto s = oracle::random_integer_spectrum(rng, 40, 60);
  MomentOptions opt;
  opt.max_terms = 100;
  const auto r = theoretical_moment(s, 4, opt);
  CHECK(r.budget_exceeded);
  CHECK_FALSE(r.theoretical);
}

TEST_CASE("integer rescaling") {
  const std::vector<double> f{0.5, 1.25, 3};
  const auto ints = integer_frequencies(f);
  REQUIRE(ints);
  CHECK(*ints == std::vector<std::int64_t>{2, 5, 12});
  const std::vector<double> irr{1, std::sqrt(2.0)};
  CHECK_FALSE(integer_frequencies(irr));
}

TEST_CASE("convergence on a single frequency") {
  const auto s = Spectrum::create({1}, {1});
  const std::vector<double> Ys{100, 1000, 10000};
  const auto r = moment_convergence(s, 2, CutoffSchedule::constant(10), Ys);
  REQUIRE(r.empirical.size() == 3);
  double prev = 1e300;
  for (const auto& [Y, v] : r.empirical) {
    const double err = std::abs(v - 2.0);
    CHECK(err <= 1.0 / Y);  // (1/Y) |int cos 2y| <= 1/Y
    CHECK(err <= prev);
    prev = err;
  }
  CHECK(*r.theoretical == 2.0);
}

TEST_CASE("resonant spectrum converges to L_3") {
  const std::vector<double> Ys{10000};
  const auto r = moment_convergence(one_two_three(), 3, CutoffSchedule::constant(10), Ys);
  CHECK(std::abs(r.empirical.back().second - 18.0) < 0.5);
}

TEST_CASE("Gauss spectrum second moment is diagonal") {
  const auto full = gauss_spectrum(static_cast<std::int64_t>(std::pow(200 / (2 * pi), 2)) + 1);
  const auto [spec, rest] = split_truncation(full, 200);
  double sq = 0;
  for (auto c : spec.coefficients()) sq += std::norm(c);
  const std::vector<double> Ys{250, 500, 1000};
  ConvergenceOptions opt;
  opt.attach_theoretical = false;
  const auto r = moment_convergence(spec, 2, CutoffSchedule::constant(200), Ys, opt);
  CHECK(std::abs(r.empirical.back().second - 2 * sq) < 0.1 * 2 * sq);
  // Brute-force scan: no two frequencies 2 pi sqrt(n) differ by 0 or sum to 0, so only
  // the diagonal pairs resonate at order two.
  const auto r2 = theoretical_moment(spec, 2);
  CHECK(r2.resonance_count == 2 * spec.size());
}

TEST_CASE("report JSON") {
  const auto j = to_json(theoretical_moment(one_two_three(), 3));
  CHECK(j.find("\"order\"") != std::string::npos);
  CHECK(j.find("18") != std::string::npos);
}
