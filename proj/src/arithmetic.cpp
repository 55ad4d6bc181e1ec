#include "apf/arithmetic.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "apf/error.hpp"

namespace apf {

namespace {

std::mutex g_budget_mutex;
Budgets g_budgets;

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t floor_nonneg(double x, std::uint64_t limit, const char* what) {
  require(std::isfinite(x) && x >= 0, std::string(what) + ": argument must be finite and >= 0");
  if (x > static_cast<double>(limit))
    fail(ErrorCode::kBudgetExceeded, std::string(what) + ": budget exceeded (limit " + std::to_string(limit) + ")");
  return static_cast<std::uint64_t>(std::floor(x));
}

std::size_t grid_count(double y0, double y1, double step) {
  require(y0 < y1 && step > 0, "grid requires y0 < y1 and step > 0");
  return static_cast<std::size_t>(std::floor((y1 - y0) / step + 1e-9)) + 1;
}

}  // namespace

Budgets budgets() {
  std::lock_guard lock(g_budget_mutex);
  return g_budgets;
}

void set_budgets(const Budgets& b) {
  std::lock_guard lock(g_budget_mutex);
  g_budgets = b;
}

ArithmeticTable von_mangoldt_table(std::uint64_t limit) {
  ArithmeticTable t;
  t.kind = ArithmeticTable::Kind::kVonMangoldt;
  t.limit = limit;
  t.log_values.assign(limit + 1, 0.0);
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t pk = p; pk <= limit; pk *= p) {
      t.log_values[pk] = lp;
      if (pk > limit / p) break;
    }
  }
  return t;
}

ArithmeticTable sum_of_two_squares_table(std::uint64_t limit) {
  ArithmeticTable t;
  t.kind = ArithmeticTable::Kind::kSumTwoSquares;
  t.limit = limit;
  t.counts.assign(limit + 1, 0);
  for (std::uint64_t a = 0; a * a <= limit; ++a) {
    for (std::uint64_t b = 0; a * a + b * b <= limit; ++b) {
      const std::int64_t weight = (a > 0 ? 2 : 1) * (b > 0 ? 2 : 1);
      t.counts[a * a + b * b] += weight;
    }
  }
  t.counts[0] = 0;  // the origin is not counted
  return t;
}

ArithmeticTable divisor_table(std::uint64_t limit) {
  ArithmeticTable t;
  t.kind = ArithmeticTable::Kind::kDivisor;
  t.limit = limit;
  t.counts.assign(limit + 1, 0);
  for (std::uint64_t k = 1; k <= limit; ++k)
    for (std::uint64_t m = k; m <= limit; m += k) ++t.counts[m];
  return t;
}

ZeroTable ZeroTable::create(std::vector<double> ordinates) {
  if (ordinates.empty()) fail(ErrorCode::kInvalidArgument, "zero table is empty");
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    if (!(ordinates[i] > 0)) fail(ErrorCode::kNonPositiveFrequency, "non-positive ordinate");
    if (i > 0 && ordinates[i] <= ordinates[i - 1]) fail(ErrorCode::kInvalidArgument, "ordinates not strictly increasing");
  }
  if (ordinates.front() < 14.1 || ordinates.front() > 14.2)
    fail(ErrorCode::kInvalidArgument, "first ordinate must lie in [14.1, 14.2]");
  return ZeroTable{std::move(ordinates)};
}

ZeroTable ZeroTable::load(const std::filesystem::path& path) { return create(load_ordinates(path)); }

ChebyshevPsi::ChebyshevPsi(std::uint64_t limit) : limit_(limit) {
  if (limit > budgets().sieve_limit)
    fail(ErrorCode::kBudgetExceeded, "psi: budget exceeded (limit " + std::to_string(budgets().sieve_limit) + ")");
  const auto table = von_mangoldt_table(limit);
  prefix_.resize(limit + 1);
  double acc = 0;
  for (std::uint64_t n = 0; n <= limit; ++n) {
    acc += table.log_values[n];
    prefix_[n] = acc;
  }
}

double ChebyshevPsi::operator()(double x) const {
  require(x >= 0, "psi: x must be >= 0");
  const auto n = static_cast<std::uint64_t>(std::floor(x));
  if (n > limit_) fail(ErrorCode::kOutOfRange, "psi: x beyond table limit");
  return prefix_[n];
}

double chebyshev_psi(double x) {
  require(x >= 1, "psi: x must be >= 1");
  const auto n = floor_nonneg(x, budgets().sieve_limit, "psi");
  return ChebyshevPsi(n)(x);
}

double pnt_remainder(double y) {
  require(y >= 0, "q(y): y must be >= 0");
  const double x = std::exp(y);
  return (chebyshev_psi(x) - x) / std::exp(y / 2);
}

Spectrum zeta_spectrum(const ZeroTable& zeros, double X) {
  if (X > zeros.ordinates.back()) fail(ErrorCode::kOutOfRange, "X exceeds the zero table");
  std::vector<double> freqs;
  std::vector<Complex> coeffs;
  for (double g : zeros.ordinates) {
    if (g > X) break;
    freqs.push_back(g);
    coeffs.push_back(-1.0 / Complex(0.5, g));
  }
  return Spectrum::create(std::move(freqs), std::move(coeffs));
}

std::int64_t lattice_count_R(double x) {
  const auto n = floor_nonneg(x, budgets().count_limit, "R(x)");
  std::int64_t quadrant = 0;  // a >= 1, b >= 0
  for (std::uint64_t a = 1; a * a <= n; ++a) quadrant += static_cast<std::int64_t>(isqrt(n - a * a)) + 1;
  return 4 * quadrant;
}

double gauss_remainder(double y) {
  require(y > 0, "u(y): y must be > 0");
  const double x = y * y;
  return (static_cast<double>(lattice_count_R(x)) - std::numbers::pi * x) / std::sqrt(y);
}

Spectrum gauss_spectrum(std::int64_t n_max, GaussNormalization normalization) {
  require(n_max >= 1, "gauss_spectrum: n_max must be >= 1");
  if (static_cast<std::uint64_t>(n_max) > budgets().count_limit * 100)
    fail(ErrorCode::kBudgetExceeded, "gauss_spectrum: budget exceeded");
  const auto r = sum_of_two_squares_table(static_cast<std::uint64_t>(n_max));
  const double pi = std::numbers::pi;
  const bool alt = normalization == GaussNormalization::kAlternative;
  const double freq_scale = alt ? 4 * pi : 2 * pi;
  const Complex phase = alt ? std::polar(1.0, -pi / 4) : std::polar(1.0, -3 * pi / 4);
  const double amp = alt ? 1.0 / (2 * pi * std::numbers::sqrt2) : 1.0 / (2 * pi);
  std::vector<double> freqs;
  std::vector<Complex> coeffs;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto rn = r.counts[static_cast<std::size_t>(n)];
    if (rn == 0) continue;
    const double nd = static_cast<double>(n);
    freqs.push_back(freq_scale * std::sqrt(nd));
    coeffs.push_back(static_cast<double>(rn) * amp / std::pow(nd, 0.75) * phase);
  }
  return Spectrum::create(std::move(freqs), std::move(coeffs));
}

std::int64_t divisor_sum(double x) {
  require(x >= 1, "D(x): x must be >= 1");
  const auto n = floor_nonneg(x, budgets().count_limit, "D(x)");
  const std::uint64_t s = isqrt(n);
  std::int64_t total = 0;
  for (std::uint64_t k = 1; k <= s; ++k) total += static_cast<std::int64_t>(n / k);
  return 2 * total - static_cast<std::int64_t>(s * s);
}

double divisor_remainder(double y) {
  require(y >= 1, "v(y): y must be >= 1");
  const double x = y * y;
  const double main = x * std::log(x) + (2 * kEulerGamma - 1) * x;
  return (static_cast<double>(divisor_sum(x)) - main) / std::sqrt(y);
}

SampledFunction pnt_remainder_grid(double y0, double y1, double step) {
  require(y0 >= 0, "q grid: y0 must be >= 0");
  const std::size_t count = grid_count(y0, y1, step);
  SampledFunction f{y0, step, {}, {}, {}};
  const ChebyshevPsi psi(floor_nonneg(std::exp(f.y0 + static_cast<double>(count - 1) * step), budgets().sieve_limit, "psi"));
  f.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double y = f.y_at(k);
    const double x = std::exp(y);
    f.values[k] = (psi(x) - x) / std::exp(y / 2);
  }
  return f;
}

SampledFunction gauss_remainder_grid(double y0, double y1, double step) {
  require(y0 > 0, "u grid: y0 must be > 0");
  const std::size_t count = grid_count(y0, y1, step);
  SampledFunction f{y0, step, {}, {}, {}};
  const double y_last = f.y_at(count - 1);
  const auto limit = floor_nonneg(y_last * y_last, budgets().count_limit, "R(x)");
  const auto r = sum_of_two_squares_table(limit);
  std::vector<std::int64_t> prefix(limit + 1, 0);
  for (std::uint64_t n = 1; n <= limit; ++n) prefix[n] = prefix[n - 1] + r.counts[n];
  f.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double y = f.y_at(k);
    const double x = y * y;
    const auto n = std::min<std::uint64_t>(limit, static_cast<std::uint64_t>(std::floor(x)));
    f.values[k] = (static_cast<double>(prefix[n]) - std::numbers::pi * x) / std::sqrt(y);
  }
  return f;
}

SampledFunction divisor_remainder_grid(double y0, double y1, double step) {
  require(y0 >= 1, "v grid: y0 must be >= 1");
  const std::size_t count = grid_count(y0, y1, step);
  SampledFunction f{y0, step, {}, {}, {}};
  const double y_last = f.y_at(count - 1);
  const auto limit = floor_nonneg(y_last * y_last, budgets().count_limit, "D(x)");
  const auto d = divisor_table(limit);
  std::vector<std::int64_t> prefix(limit + 1, 0);
  for (std::uint64_t n = 1; n <= limit; ++n) prefix[n] = prefix[n - 1] + d.counts[n];
  f.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double y = f.y_at(k);
    const double x = y * y;
    const auto n = std::min<std::uint64_t>(limit, static_cast<std::uint64_t>(std::floor(x)));
    const double main = x * std::log(x) + (2 * kEulerGamma - 1) * x;
    f.values[k] = (static_cast<double>(prefix[n]) - main) / std::sqrt(y);
  }
  return f;
}

}  // namespace apf
