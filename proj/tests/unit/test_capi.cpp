// Exercises the shared library through its C interface only.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "apf/apf.h"
#include "doctest.h"

using std::numbers::pi;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  apf_string_free(s);
  return out;
}

apf_spectrum_t* one_two_three() {
  const double lam[] = {1, 2, 3}, re[] = {1, 1, 1}, im[] = {0, 0, 0};
  apf_spectrum_t* s = nullptr;
  REQUIRE(apf_spectrum_create(lam, re, im, 3, &s) == APF_OK);
  return s;
}

}  // namespace

TEST_CASE("library metadata and errors") {
  CHECK(std::strlen(apf_version()) > 0);
  const double lam[] = {0.0}, re[] = {1}, im[] = {0};
  apf_spectrum_t* s = nullptr;
  CHECK(apf_spectrum_create(lam, re, im, 1, &s) == APF_ERR_NON_POSITIVE_FREQUENCY);
  CHECK(s == nullptr);
  CHECK(std::string(apf_last_error()).find("non-positive frequency") != std::string::npos);
  CHECK(apf_spectrum_create(nullptr, re, im, 1, &s) == APF_ERR_INVALID_ARGUMENT);
  CHECK(apf_spectrum_load("/nonexistent/x.csv", &s) == APF_ERR_IO);
  double v = 0;
  CHECK(apf_eval_sum(nullptr, 0, 1, &v) == APF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("threads and budgets") {
  const unsigned saved = apf_get_threads();
  apf_set_threads(3);
  CHECK(apf_get_threads() == 3);
  apf_set_threads(saved);
  uint64_t sieve = 0, count = 0;
  apf_get_budgets(&sieve, &count);
  CHECK(sieve == 10'000'000);
  CHECK(count == 1'000'000);
  int64_t r = 0;
  CHECK(apf_lattice_count(2e6, &r) == APF_ERR_BUDGET_EXCEEDED);
  CHECK(apf_set_budgets(sieve, 4'000'000) == APF_OK);
  CHECK(apf_lattice_count(2e6, &r) == APF_OK);
  CHECK(apf_set_budgets(sieve, count) == APF_OK);
}

TEST_CASE("spectrum handles") {
  apf_spectrum_t* s = nullptr;
  REQUIRE(apf_spectrum_parse("2.0,0.25,0.25\n1.0,0.5,0\n", &s) == APF_OK);
  CHECK(std::string(apf_last_warning()).find("sorted") != std::string::npos);
  CHECK(apf_spectrum_size(s) == 2);
  double lam = 0, re = 0, im = 0;
  REQUIRE(apf_spectrum_get(s, 1, &lam, &re, &im) == APF_OK);
  CHECK(lam == 2.0);
  CHECK(im == 0.25);
  CHECK(apf_spectrum_get(s, 2, &lam, &re, &im) == APF_ERR_OUT_OF_RANGE);

  char* csv = nullptr;
  REQUIRE(apf_spectrum_to_csv(s, &csv) == APF_OK);
  apf_spectrum_t* back = nullptr;
  REQUIRE(apf_spectrum_parse(csv, &back) == APF_OK);
  apf_string_free(csv);
  CHECK(apf_spectrum_digest(back) == apf_spectrum_digest(s));
  apf_spectrum_free(back);
  apf_spectrum_free(s);
  apf_spectrum_free(nullptr);
}

TEST_CASE("zeta and Gauss spectra, beta fit") {
  const std::string zeros = std::string(APF_DATA_DIR) + "/zeta_zeros.txt";
  apf_spectrum_t* z = nullptr;
  REQUIRE(apf_spectrum_zeta(zeros.c_str(), 22, &z) == APF_OK);
  CHECK(apf_spectrum_size(z) == 2);
  apf_spectrum_free(z);

  apf_spectrum_t* g = nullptr;
  REQUIRE(apf_spectrum_gauss(10000, 0, &g) == APF_OK);
  double beta = 0, r2 = 0;
  char* windows = nullptr;
  REQUIRE(apf_spectrum_fit_beta(g, 10, 2 * pi * 100, &beta, &r2, &windows) == APF_OK);
  CHECK(std::abs(beta - 0.5) < 0.1);
  CHECK(take(windows).find("T,sum") != std::string::npos);
  apf_spectrum_free(g);
}

TEST_CASE("evaluation") {
  auto* s = one_two_three();
  double v = 0;
  REQUIRE(apf_eval_sum(s, 0, 2.5, &v) == APF_OK);
  CHECK(v == 4.0);
  apf_sampled_t* f = nullptr;
  const apf_schedule sched{APF_SCHEDULE_CONSTANT, 10};
  REQUIRE(apf_eval_grid(s, 0, 2 * pi, pi / 100, sched, 1, &f) == APF_OK);
  CHECK(apf_sampled_size(f) == 201);
  const double* vals = apf_sampled_values(f);
  for (size_t k = 0; k < apf_sampled_size(f); ++k) {
    const double y = apf_sampled_y0(f) + k * apf_sampled_step(f);
    CHECK(std::abs(vals[k] - 2 * (std::cos(y) + std::cos(2 * y) + std::cos(3 * y))) < 1e-12);
  }
  const char* header[] = {"capi"};
  char* csv = nullptr;
  REQUIRE(apf_sampled_to_csv(f, header, 1, &csv) == APF_OK);
  CHECK(take(csv).rfind("# capi\n", 0) == 0);
  apf_sampled_free(f);

  const double lam[] = {1000}, re[] = {1}, im[] = {0};
  apf_spectrum_t* fast = nullptr;
  REQUIRE(apf_spectrum_create(lam, re, im, 1, &fast) == APF_OK);
  CHECK(apf_eval_grid(fast, 0, 1, 0.01, apf_schedule{APF_SCHEDULE_CONSTANT, 2000}, 1, &f) == APF_ERR_ALIASING);
  apf_spectrum_free(fast);
  apf_spectrum_free(s);
}

TEST_CASE("arithmetic scalars and grids") {
  double v = 0;
  int64_t n = 0;
  REQUIRE(apf_chebyshev_psi(10, &v) == APF_OK);
  CHECK(v == doctest::Approx(3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0)));
  REQUIRE(apf_lattice_count(100, &n) == APF_OK);
  CHECK(n == 316);
  REQUIRE(apf_divisor_sum(10, &n) == APF_OK);
  CHECK(n == 27);
  REQUIRE(apf_pnt_remainder(0, &v) == APF_OK);
  CHECK(v == doctest::Approx(-1));
  REQUIRE(apf_gauss_remainder(1, &v) == APF_OK);
  CHECK(v == doctest::Approx(4 - pi));
  REQUIRE(apf_divisor_remainder(2, &v) == APF_OK);
  CHECK(std::isfinite(v));
  apf_sampled_t* f = nullptr;
  REQUIRE(apf_gauss_grid(1, 10, 0.5, &f) == APF_OK);
  CHECK(apf_sampled_size(f) == 19);
  CHECK(apf_sampled_values(f)[18] == doctest::Approx((316 - 100 * pi) / std::sqrt(10.0)));
  apf_sampled_free(f);
  REQUIRE(apf_pnt_grid(0, 5, 0.25, &f) == APF_OK);
  apf_sampled_free(f);
  REQUIRE(apf_divisor_grid(1, 5, 0.25, &f) == APF_OK);
  apf_sampled_free(f);
}

TEST_CASE("moments, distributions and tails") {
  auto* s = one_two_three();
  const auto opt = apf_moment_options_default();
  apf_moment_report_t* r3 = nullptr;
  REQUIRE(apf_theoretical_moment(s, 3, &opt, &r3) == APF_OK);
  double L = 0;
  REQUIRE(apf_moment_report_theoretical(r3, &L) == 1);
  CHECK(L == 18.0);
  CHECK(apf_moment_report_resonance_count(r3) == 18);
  CHECK(apf_moment_report_exact_mode(r3) == 1);
  CHECK(apf_moment_report_budget_exceeded(r3) == 0);

  const double Ys[] = {1000, 10000};
  apf_moment_report_t* conv = nullptr;
  REQUIRE(apf_moment_convergence(s, 3, apf_schedule{APF_SCHEDULE_CONSTANT, 10}, Ys, 2, 0.01, 1, &opt, &conv) == APF_OK);
  REQUIRE(apf_moment_report_empirical_count(conv) == 2);
  double Y = 0, val = 0;
  REQUIRE(apf_moment_report_empirical(conv, 1, &Y, &val) == APF_OK);
  CHECK(Y == 10000);
  CHECK(std::abs(val - 18) < 0.5);
  char* json = nullptr;
  REQUIRE(apf_moment_report_to_json(conv, &json) == APF_OK);
  CHECK(take(json).find("\"empirical\"") != std::string::npos);

  apf_distribution_t* d = nullptr;
  REQUIRE(apf_truncated_distribution(s, 10, 10000, 400, 0.01, &d) == APF_OK);
  double total = 0;
  for (size_t b = 0; b < apf_distribution_bins(d); ++b) {
    double l = 0, rr = 0, m = 0;
    REQUIRE(apf_distribution_bin(d, b, &l, &rr, &m) == APF_OK);
    total += m;
  }
  CHECK(std::abs(total - 1) < 1e-12);
  CHECK(std::abs(apf_distribution_moment(d, 3) - 18) < 1);
  CHECK(apf_distribution_tail_mass(d, 6.5) == 0.0);

  const double S[] = {1, 2, 4, 6.5};
  apf_tail_summary sum{};
  REQUIRE(apf_fit_tails_finite(d, S, 4, s, &sum, nullptr) == APF_OK);
  CHECK(sum.compact_support == 1);
  CHECK(sum.predicted_compact == 1);
  REQUIRE(apf_fit_tails(d, S, 4, 1, 0.75, &sum, nullptr) == APF_OK);
  CHECK(sum.has_predicted == 1);
  CHECK(sum.predicted_exponent == 1.0);
  double pe = 0;
  CHECK(apf_predicted_tail_exponent(0.5, &pe) == 1);
  CHECK(pe == 0.0);
  CHECK(apf_predicted_tail_exponent(1.0, &pe) == 0);

  const apf_moment_report_t* reports[] = {r3};
  double gap = 0;
  REQUIRE(apf_compare_moments(d, reports, 1, &gap, nullptr) == APF_OK);
  CHECK(std::abs(gap) < 1);

  apf_distribution_free(d);
  apf_moment_report_free(conv);
  apf_moment_report_free(r3);
  apf_spectrum_free(s);
}

TEST_CASE("hyperbolic counting and remainders") {
  apf_hpoint z{};
  REQUIRE(apf_parse_point("i", &z) == APF_OK);
  CHECK(z.y == 1.0);
  CHECK(apf_parse_point("nonsense", &z) == APF_ERR_PARSE);
  double d = 0;
  REQUIRE(apf_distance(apf_hpoint{0, 1}, apf_hpoint{0, 2}, &d) == APF_OK);
  CHECK(d == doctest::Approx(std::log(2.0)));
  const double T[] = {1, 1, 0, 1};
  apf_hpoint w{};
  REQUIRE(apf_apply_map(T, apf_hpoint{0, 1}, &w) == APF_OK);
  CHECK(w.x == 1.0);
  const double bad[] = {1, 1, 1, 1};
  CHECK(apf_apply_map(bad, z, &w) == APF_ERR_INVALID_ARGUMENT);

  apf_group_t* g = nullptr;
  REQUIRE(apf_group_modular(&g) == APF_OK);
  apf_orbit_t* o = nullptr;
  REQUIRE(apf_count_orbit(g, 6, z, z, &o) == APF_OK);
  CHECK(apf_orbit_count_within(o, 0) == 2);
  CHECK(apf_orbit_complete(o, nullptr) == 1);
  CHECK(apf_orbit_radius(o) == 6);
  double entries[4], dist = 0;
  REQUIRE(apf_orbit_element(o, 0, entries, &dist) == APF_OK);
  CHECK(dist == 0.0);

  apf_spectral_data_t* sd = nullptr;
  REQUIRE(apf_spectral_data_default(&sd) == APF_OK);
  CHECK(apf_spectral_data_volume(sd) == doctest::Approx(pi / 3));
  double v = 0;
  REQUIRE(apf_main_term(sd, 1, &v) == APF_OK);
  CHECK(v == doctest::Approx(3 * std::exp(1.0)));
  REQUIRE(apf_remainder_e(o, sd, 0, &v) == APF_OK);
  CHECK(v == doctest::Approx(-1));
  CHECK(apf_remainder_e(o, sd, 7, &v) == APF_ERR_OUT_OF_RANGE);
  double H = 0, naive = 0, bound = 0;
  REQUIRE(apf_variance_window(o, sd, 4, 0.05, &H) == APF_OK);
  REQUIRE(apf_variance_window_fixed_step(o, sd, 4, 1e-3, &naive) == APF_OK);
  REQUIRE(apf_variance_fixed_step_bound(o, sd, 4, 1e-3, &bound) == APF_OK);
  CHECK(std::abs(H - naive) <= bound);
  REQUIRE(apf_integrated_remainder_g3(o, sd, 0, &v) == APF_OK);
  CHECK(v == 0.0);

  apf_spectral_data_t* custom = nullptr;
  REQUIRE(apf_spectral_data_parse("volume = pi/3\nsmall_eig = 0.25,1,0\n", &custom) == APF_OK);
  REQUIRE(apf_main_term(custom, 0, &v) == APF_OK);
  CHECK(v > 3);
  CHECK(apf_spectral_data_parse("volume = -1\n", &custom) != APF_OK);
  apf_spectral_data_free(custom);

  const int64_t gens[] = {0, -1, 1, 0, 1, 1, 0, 1};
  apf_group_t* bfs = nullptr;
  REQUIRE(apf_group_from_generators(gens, 2, 2.0, &bfs) == APF_OK);
  apf_orbit_t* ob = nullptr;
  REQUIRE(apf_count_orbit(bfs, 2, z, z, &ob) == APF_OK);
  CHECK(apf_orbit_count(ob) == apf_orbit_count_within(o, 2));
  char* note = nullptr;
  CHECK(apf_orbit_complete(ob, &note) == 0);
  CHECK_FALSE(take(note).empty());

  apf_orbit_free(ob);
  apf_group_free(bfs);
  apf_spectral_data_free(sd);
  apf_orbit_free(o);
  apf_group_free(g);
}

TEST_CASE("transforms") {
  double re = 0, im = 0;
  REQUIRE(apf_shc_integral(1, 0, 0.5, &re, &im) == APF_OK);
  CHECK(std::abs(re - 2 * pi * (std::cosh(1.0) - 1)) < 1e-8);
  CHECK(apf_shc_at_i_half(1) == doctest::Approx(2 * pi * (std::cosh(1.0) - 1)));
  double v = 0;
  REQUIRE(apf_g_transform(1, 0, &v) == APF_OK);
  CHECK(v == doctest::Approx(2.0841).epsilon(1e-4));
  CHECK(apf_shc_imag(1, 0.7, &v) == APF_ERR_INVALID_ARGUMENT);
  const double u[] = {0, 0.5, 1.0, 2.0, 5.0};
  double km[5], kp[5];
  REQUIRE(apf_smoothed_kernels(2, 0.1, u, 5, km, kp) == APF_OK);
  for (int k = 0; k < 5; ++k) CHECK(km[k] <= kp[k]);
}

TEST_CASE("file hashing") {
  const auto path = std::filesystem::temp_directory_path() / "apf_hash.txt";
  { std::ofstream(path) << "abc"; }
  uint64_t h = 0;
  REQUIRE(apf_hash_file(path.c_str(), &h) == APF_OK);
  CHECK(h == 0xe71fa2190541574bULL);  // FNV-1a 64 of "abc"
  std::filesystem::remove(path);
}
