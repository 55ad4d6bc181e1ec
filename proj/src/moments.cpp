#include "apf/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "apf/error.hpp"
#include "apf/parallel.hpp"

namespace apf {

namespace {

constexpr std::int64_t kMaxDenominator = 1'000'000;
constexpr std::size_t kMaxHalfEntries = 20'000'000;
constexpr std::size_t kBlock = 4096;

std::optional<std::pair<std::int64_t, std::int64_t>> as_rational(double x) {
  if (!std::isfinite(x) || std::abs(x) > 1e15) return std::nullopt;
  // Continued-fraction convergents p/q of x.
  long double rest = x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a = std::floor(rest);
    if (std::abs(a) > 1e15) return std::nullopt;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > kMaxDenominator) return std::nullopt;
    if (static_cast<double>(p2) / static_cast<double>(q2) == x) return std::pair{p2, q2};
    const long double frac = rest - a;
    if (frac == 0) return std::nullopt;
    rest = 1 / frac;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::nullopt;
}

struct HalfEntry {
  double key = 0;
  std::int64_t ikey = 0;
  Complex amplitude{1, 0};
  std::uint32_t ordinal = 0;  // position in canonical enumeration order
};

// All signed k-tuples in canonical order: sign pattern (bit s set = minus at slot s)
// outermost, then indices lexicographically.
std::vector<HalfEntry> enumerate_half(std::span<const double> f, std::span<const std::int64_t> fi,
                                      std::span<const Complex> c, int k) {
  const std::size_t m = f.size();
  std::size_t per_pattern = 1;
  for (int s = 0; s < k; ++s) per_pattern *= m;
  const std::size_t total = per_pattern << k;
  if (m > 0 && total / (std::size_t{1} << k) != per_pattern) fail(ErrorCode::kBudgetExceeded, "half-list overflow");
  if (total > kMaxHalfEntries)
    fail(ErrorCode::kBudgetExceeded, "combinatorial budget exceeded: half-list of " + std::to_string(total) + " entries");
  std::vector<HalfEntry> out;
  out.reserve(total);
  std::vector<std::size_t> idx(static_cast<std::size_t>(k));
  for (std::uint32_t pattern = 0; pattern < (1u << k); ++pattern) {
    for (std::size_t flat = 0; flat < per_pattern; ++flat) {
      std::size_t rem = flat;
      for (int s = k - 1; s >= 0; --s) {
        idx[static_cast<std::size_t>(s)] = rem % m;
        rem /= m;
      }
      HalfEntry e;
      for (int s = 0; s < k; ++s) {
        const std::size_t j = idx[static_cast<std::size_t>(s)];
        const bool minus = (pattern >> s) & 1u;
        e.key += minus ? -f[j] : f[j];
        if (!fi.empty()) e.ikey += minus ? -fi[j] : fi[j];
        e.amplitude *= minus ? std::conj(c[j]) : c[j];
      }
      e.ordinal = static_cast<std::uint32_t>(out.size());
      out.push_back(e);
    }
  }
  return out;
}

void decode(std::uint32_t ordinal, std::size_t m, int k, std::vector<std::size_t>& idx, std::vector<int>& signs) {
  std::size_t per_pattern = 1;
  for (int s = 0; s < k; ++s) per_pattern *= m;
  const std::size_t pattern = ordinal / per_pattern;
  std::size_t rem = ordinal % per_pattern;
  std::vector<std::size_t> local(static_cast<std::size_t>(k));
  for (int s = k - 1; s >= 0; --s) {
    local[static_cast<std::size_t>(s)] = rem % m;
    rem /= m;
  }
  for (int s = 0; s < k; ++s) {
    idx.push_back(local[static_cast<std::size_t>(s)]);
    signs.push_back(((pattern >> s) & 1u) ? -1 : 1);
  }
}

struct ComplexNeumaier {
  double re = 0, im = 0, cre = 0, cim = 0;
  static void add1(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  void add(Complex v) {
    add1(re, cre, v.real());
    add1(im, cim, v.imag());
  }
  void merge(const ComplexNeumaier& o) {
    add1(re, cre, o.re);
    add1(re, cre, o.cre);
    add1(im, cim, o.im);
    add1(im, cim, o.cim);
  }
  Complex value() const { return {re + cre, im + cim}; }
};

}  // namespace

std::optional<std::vector<std::int64_t>> integer_frequencies(std::span<const double> frequencies) {
  std::vector<std::pair<std::int64_t, std::int64_t>> fracs;
  fracs.reserve(frequencies.size());
  std::int64_t scale = 1;
  for (double x : frequencies) {
    auto r = as_rational(x);
    if (!r) return std::nullopt;
    fracs.push_back(*r);
    const std::int64_t g = std::gcd(scale, r->second);
    const __int128 next = static_cast<__int128>(scale / g) * r->second;
    if (next > (__int128{1} << 40)) return std::nullopt;
    scale = static_cast<std::int64_t>(next);
  }
  std::vector<std::int64_t> out;
  out.reserve(fracs.size());
  for (auto [p, q] : fracs) {
    const __int128 v = static_cast<__int128>(p) * (scale / q);
    if (v > (__int128{1} << 50) || v < -(__int128{1} << 50)) return std::nullopt;
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

double empirical_moment(const SampledFunction& f, int n, double Y) {
  require(n >= 1, "moment order must be >= 1");
  require(Y > 0, "Y must be positive");
  require(f.step > 0, "sampled function has non-positive step");
  const double intervals_real = (Y - f.y0) / f.step;
  if (intervals_real < 0.5) fail(ErrorCode::kOutOfRange, "Y lies at or before the grid start");
  const double rounded = std::round(intervals_real);
  if (std::abs(intervals_real - rounded) > 1e-6 * std::max(1.0, rounded))
    fail(ErrorCode::kOutOfRange, "Y is not a grid point");
  const auto m = static_cast<std::size_t>(rounded);
  if (m + 1 > f.size()) fail(ErrorCode::kOutOfRange, "Y exceeds grid");
  if (m % 2 != 0) fail(ErrorCode::kInvalidArgument, "odd sample-count requirement violated (Simpson)");
  auto power = [n](double v) {
    double r = 1;
    for (int i = 0; i < n; ++i) r *= v;
    return r;
  };
  ComplexNeumaier acc;
  for (std::size_t k = 0; k <= m; ++k) {
    const double w = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc.add({w * power(f.values[k]), 0});
  }
  return acc.value().real() * f.step / 3.0 / Y;
}

MomentReport theoretical_moment(const Spectrum& spec, int n, const MomentOptions& options) {
  require(n >= 1, "moment order must be >= 1");
  MomentReport report;
  report.order = n;
  report.spectrum_size = spec.size();
  report.max_frequency = spec.max_frequency();

  std::vector<std::int64_t> ints;
  if (options.mode != ResonanceMode::kFloating) {
    auto converted = integer_frequencies(spec.frequencies());
    if (converted) {
      ints = std::move(*converted);
      report.exact_mode = true;
    } else if (options.mode == ResonanceMode::kExact) {
      fail(ErrorCode::kInvalidArgument, "exact mode requires rational frequencies (denominator <= 10^6)");
    }
  }
  const double tol = report.exact_mode ? 0.0 : (options.tolerance >= 0 ? options.tolerance : 1e-9 * spec.max_frequency());
  report.tolerance = tol;
  if (spec.empty()) {
    report.theoretical = 0.0;
    return report;
  }

  const int left_len = (n + 1) / 2;
  const int right_len = n - left_len;
  const auto f = spec.frequencies();
  const auto c = spec.coefficients();
  const auto left = enumerate_half(f, ints, c, left_len);
  auto right = enumerate_half(f, ints, c, right_len);
  if (report.exact_mode)
    std::stable_sort(right.begin(), right.end(), [](const HalfEntry& a, const HalfEntry& b) { return a.ikey < b.ikey; });
  else
    std::stable_sort(right.begin(), right.end(), [](const HalfEntry& a, const HalfEntry& b) { return a.key < b.key; });

  auto match_range = [&](const HalfEntry& l) -> std::pair<std::size_t, std::size_t> {
    if (report.exact_mode) {
      auto lo = std::lower_bound(right.begin(), right.end(), -l.ikey,
                                 [](const HalfEntry& e, std::int64_t v) { return e.ikey < v; });
      auto hi = std::upper_bound(lo, right.end(), -l.ikey,
                                 [](std::int64_t v, const HalfEntry& e) { return v < e.ikey; });
      return {static_cast<std::size_t>(lo - right.begin()), static_cast<std::size_t>(hi - right.begin())};
    }
    auto lo = std::lower_bound(right.begin(), right.end(), -l.key - tol,
                               [](const HalfEntry& e, double v) { return e.key < v; });
    auto hi = std::upper_bound(lo, right.end(), -l.key + tol,
                               [](double v, const HalfEntry& e) { return v < e.key; });
    return {static_cast<std::size_t>(lo - right.begin()), static_cast<std::size_t>(hi - right.begin())};
  };

  // Pass 1: resonance count per left entry (cheap), to decide on the budget up front.
  std::vector<std::pair<std::size_t, std::size_t>> ranges(left.size());
  parallel_chunks(left.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) ranges[i] = match_range(left[i]);
  });
  std::size_t total = 0;
  for (const auto& r : ranges) total += r.second - r.first;
  report.budget_exceeded = total > options.max_terms;

  // Pass 2: accumulate in fixed blocks of left entries, merged in block order.
  const std::size_t blocks = (left.size() + kBlock - 1) / kBlock;
  struct Partial {
    ComplexNeumaier sum;
    double mass = 0;
  };
  std::vector<Partial> partials(blocks);
  auto accumulate_block = [&](std::size_t blk, std::size_t budget_left) {
    Partial p;
    const std::size_t end = std::min(left.size(), (blk + 1) * kBlock);
    std::size_t used = 0;
    for (std::size_t i = blk * kBlock; i < end && used < budget_left; ++i) {
      for (std::size_t r = ranges[i].first; r < ranges[i].second && used < budget_left; ++r, ++used) {
        const Complex a = left[i].amplitude * right[r].amplitude;
        p.sum.add(a);
        p.mass += std::abs(a);
      }
    }
    return std::pair{p, used};
  };

  ComplexNeumaier grand;
  double mass = 0;
  std::size_t counted = 0;
  if (!report.budget_exceeded) {
    parallel_chunks(blocks, [&](std::size_t b, std::size_t e) {
      for (std::size_t blk = b; blk < e; ++blk) partials[blk] = accumulate_block(blk, SIZE_MAX).first;
    });
    for (const auto& p : partials) {
      grand.merge(p.sum);
      mass += p.mass;
    }
    counted = total;
  } else {
    for (std::size_t blk = 0; blk < blocks && counted < options.max_terms; ++blk) {
      auto [p, used] = accumulate_block(blk, options.max_terms - counted);
      grand.merge(p.sum);
      mass += p.mass;
      counted += used;
    }
  }

  const Complex value = grand.value();
  report.resonance_count = counted;
  report.amplitude_mass = mass;
  report.imag_residual = std::abs(value.imag());
  if (report.budget_exceeded)
    report.partial_value = value.real();
  else
    report.theoretical = value.real();

  if (options.collect_tuples > 0) {
    const std::size_t m = spec.size();
    for (std::size_t i = 0; i < left.size() && report.tuples.size() < options.collect_tuples; ++i) {
      for (std::size_t r = ranges[i].first; r < ranges[i].second && report.tuples.size() < options.collect_tuples; ++r) {
        ResonantTuple t;
        decode(left[i].ordinal, m, left_len, t.indices, t.signs);
        decode(right[r].ordinal, m, right_len, t.indices, t.signs);
        t.theta = left[i].key + right[r].key;
        t.amplitude = left[i].amplitude * right[r].amplitude;
        report.tuples.push_back(std::move(t));
      }
    }
  }
  return report;
}

double simpson_step(const Spectrum& spec, double Y, double X, double max_step) {
  require(Y > 0 && max_step > 0, "simpson_step needs Y > 0 and max_step > 0");
  const std::size_t count = spec.count_up_to(X);
  const double lambda_max = count ? spec.frequencies()[count - 1] : 0.0;
  double target = max_step;
  if (lambda_max > 0) target = std::min(target, 0.9 * kAliasingLimit / lambda_max);
  auto m = static_cast<std::size_t>(std::ceil(Y / target));
  if (m < 2) m = 2;
  if (m % 2) ++m;
  return Y / static_cast<double>(m);
}

MomentReport moment_convergence(const Spectrum& spec, int n, const CutoffSchedule& schedule,
                                std::span<const double> Y_list, const ConvergenceOptions& options) {
  require(!Y_list.empty(), "Y list is empty");
  for (std::size_t i = 1; i < Y_list.size(); ++i) require(Y_list[i] > Y_list[i - 1], "Y list must be increasing");
  MomentReport report;
  if (options.attach_theoretical) {
    const double x_final = schedule(Y_list.back());
    const auto [low, high] = split_truncation(spec, x_final);
    try {
      report = theoretical_moment(low, n, options.moment);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBudgetExceeded) throw;
      report = MomentReport{};
      report.budget_exceeded = true;
    }
  }
  report.order = n;
  report.y_start = 0;
  for (double Y : Y_list) {
    const double X = schedule(Y);
    const double step = simpson_step(spec, Y, X, options.max_step);
    const auto grid = eval_grid(spec, 0.0, Y, step, schedule, true);
    report.empirical.emplace_back(Y, empirical_moment(grid, n, Y));
  }
  return report;
}

std::string to_json(const MomentReport& r) {
  nlohmann::ordered_json j;
  j["order"] = r.order;
  j["tolerance"] = r.tolerance;
  j["exact_mode"] = r.exact_mode;
  j["resonance_count"] = r.resonance_count;
  j["theoretical"] = r.theoretical ? nlohmann::ordered_json(*r.theoretical) : nlohmann::ordered_json(nullptr);
  j["budget_exceeded"] = r.budget_exceeded;
  if (r.budget_exceeded) j["partial_value"] = r.partial_value;
  j["imag_residual"] = r.imag_residual;
  j["spectrum_size"] = r.spectrum_size;
  j["max_frequency"] = r.max_frequency;
  j["y_start"] = r.y_start;
  auto emp = nlohmann::ordered_json::array();
  for (const auto& [Y, v] : r.empirical) emp.push_back({Y, v});
  j["empirical"] = emp;
  return j.dump(2);
}

}  // namespace apf
