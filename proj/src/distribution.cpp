#include "apf/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "apf/error.hpp"
#include "apf/parallel.hpp"

namespace apf {

namespace {

constexpr std::size_t kCellBlock = 1 << 16;

double neumaier_sum(std::span<const double> xs) {
  double sum = 0, comp = 0;
  for (double v : xs) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double DistributionEstimate::interval_mass(double a, double b) const {
  if (b < a) return 0;
  double total = 0;
  if (point_mass) {
    const double v = midpoint(0);
    return (v >= a && v <= b) ? masses[0] : 0.0;
  }
  for (std::size_t k = 0; k < masses.size(); ++k) {
    const double l = bin_edges[k], r = bin_edges[k + 1];
    const double overlap = std::min(r, b) - std::max(l, a);
    if (overlap > 0) total += masses[k] * std::min(1.0, overlap / (r - l));
  }
  return total;
}

double DistributionEstimate::tail_mass(double S) const {
  if (point_mass) return std::abs(midpoint(0)) >= S ? masses[0] : 0.0;
  double total = 0;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    const double l = bin_edges[k], r = bin_edges[k + 1];
    // length of [l, r] inside (-inf, -S] U [S, inf)
    double inside = 0;
    if (S <= 0) {
      inside = r - l;
    } else {
      inside += std::max(0.0, std::min(r, -S) - l);
      inside += std::max(0.0, r - std::max(l, S));
    }
    if (inside > 0) total += masses[k] * std::min(1.0, inside / (r - l));
  }
  return total;
}

double DistributionEstimate::moment(int n) const {
  std::vector<double> terms(masses.size());
  for (std::size_t k = 0; k < masses.size(); ++k) terms[k] = masses[k] * std::pow(midpoint(k), n);
  return neumaier_sum(terms);
}

DistributionEstimate estimate_distribution(const SampledFunction& f, double Y, int bins) {
  require(bins >= 10, "need at least 10 bins");
  require(f.size() >= 2, "sampled function needs at least two points");
  const double t_end = (Y - f.y0) / f.step;
  if (t_end <= 0) fail(ErrorCode::kOutOfRange, "Y lies at or before the grid start");
  if (t_end > static_cast<double>(f.size() - 1) + 1e-9) fail(ErrorCode::kOutOfRange, "Y exceeds grid");

  // Sample values on [y0, Y], with an interpolated final point when Y is off-grid.
  auto last = static_cast<std::size_t>(std::floor(t_end + 1e-9));
  last = std::min(last, f.size() - 1);
  std::vector<double> v(f.values.begin(), f.values.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  std::vector<double> dt(last, f.step);
  const double frac = t_end - static_cast<double>(last);
  if (frac > 1e-9 && last + 1 < f.size()) {
    v.push_back(f.values[last] + frac * (f.values[last + 1] - f.values[last]));
    dt.push_back(frac * f.step);
  }

  DistributionEstimate est;
  est.Y = Y;
  est.y_start = f.y0;
  est.sample_count = v.size();
  est.note = "finite-Y occupation measure on [y_start, Y]";
  const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it, hi = *hi_it;
  est.support_radius = std::max(std::abs(lo), std::abs(hi));

  if (hi - lo <= 1e-14 * std::max(1.0, std::abs(lo))) {
    const double center = 0.5 * (lo + hi);
    est.bin_edges = {center - 0.5, center + 0.5};
    est.masses = {1.0};
    est.point_mass = true;
    return est;
  }

  const auto nb = static_cast<std::size_t>(bins);
  const double width = (hi - lo) / static_cast<double>(nb);
  est.bin_edges.resize(nb + 1);
  for (std::size_t k = 0; k <= nb; ++k) est.bin_edges[k] = lo + static_cast<double>(k) * width;
  est.bin_edges[nb] = hi;

  auto bin_of = [&](double x) {
    auto b = static_cast<std::ptrdiff_t>(std::floor((x - lo) / width));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(nb) - 1));
  };

  const std::size_t cells = dt.size();
  const std::size_t blocks = (cells + kCellBlock - 1) / kCellBlock;
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(nb, 0.0));
  parallel_chunks(blocks, [&](std::size_t bb, std::size_t be) {
    for (std::size_t blk = bb; blk < be; ++blk) {
      auto& acc = partial[blk];
      const std::size_t end = std::min(cells, (blk + 1) * kCellBlock);
      for (std::size_t k = blk * kCellBlock; k < end; ++k) {
        const double a = v[k], b = v[k + 1];
        if (a == b) {
          acc[bin_of(a)] += dt[k];
          continue;
        }
        const double lo_v = std::min(a, b), hi_v = std::max(a, b);
        const double rate = dt[k] / (hi_v - lo_v);
        const std::size_t first = bin_of(lo_v), final_bin = bin_of(hi_v);
        for (std::size_t bin = first; bin <= final_bin; ++bin) {
          const double l = std::max(lo_v, est.bin_edges[bin]);
          const double r = std::min(hi_v, est.bin_edges[bin + 1]);
          if (r > l) acc[bin] += (r - l) * rate;
        }
      }
    }
  });
  est.masses.assign(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    std::vector<double> column(blocks);
    for (std::size_t blk = 0; blk < blocks; ++blk) column[blk] = partial[blk][b];
    est.masses[b] = neumaier_sum(column);
  }
  const double total = neumaier_sum(est.masses);
  for (auto& m : est.masses) m /= total;
  return est;
}

DistributionEstimate truncated_distribution(const Spectrum& spec, double T, double Y, int bins, double max_step) {
  require(T > 0, "truncation point must be positive");
  require(Y > 0, "Y must be positive");
  const auto low = split_truncation(spec, T).first;
  const double step = simpson_step(low, Y, T, max_step);
  const auto grid = eval_grid(low, 0.0, Y, step, CutoffSchedule::constant(T), true);
  auto est = estimate_distribution(grid, Y, bins);
  est.note = "nu_T surrogate: phi_T occupation measure on [0, Y], T=" + std::to_string(T);
  return est;
}

std::optional<double> predicted_tail_exponent(double beta) {
  if (beta >= 1) return std::nullopt;
  return (2 * beta - 1) / (2 - 2 * beta);
}

TailFit fit_tails(const DistributionEstimate& est, std::span<const double> S_grid, std::optional<double> beta) {
  require(!S_grid.empty(), "S grid is empty");
  for (std::size_t i = 1; i < S_grid.size(); ++i) require(S_grid[i] > S_grid[i - 1], "S grid must be increasing");
  TailFit fit;
  fit.beta = beta;
  if (beta) {
    fit.predicted_exponent = predicted_tail_exponent(*beta);
    fit.predicted_compact = *beta > 1;
  }
  fit.S_values.assign(S_grid.begin(), S_grid.end());
  double prev = 1.0;
  for (double S : S_grid) {
    // min() keeps the sequence monotone against rounding in the bin sums.
    const double t = std::min(prev, est.tail_mass(S));
    fit.tail_masses.push_back(t);
    prev = t;
  }
  fit.compact_support = fit.tail_masses.back() == 0.0;
  if (fit.compact_support) return fit;

  const double floor_mass = 10.0 / static_cast<double>(std::max<std::size_t>(1, est.sample_count));
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < S_grid.size(); ++i) {
    if (S_grid[i] > 0 && fit.tail_masses[i] > floor_mass) {
      xs.push_back(std::log(S_grid[i]));
      ys.push_back(std::log(fit.tail_masses[i]));
    }
  }
  fit.points_used = xs.size();
  if (xs.size() < 2) return fit;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx > 0) fit.exponent_hat = -sxy / sxx;
  return fit;
}

TailFit fit_tails(const DistributionEstimate& est, std::span<const double> S_grid, const Spectrum& spec) {
  require(!spec.empty(), "spectrum is empty");
  return fit_tails(est, S_grid, std::numeric_limits<double>::infinity());
}

std::vector<MomentComparison> compare_moments(const DistributionEstimate& est, std::span<const MomentReport> reports) {
  std::vector<MomentComparison> out;
  for (const auto& r : reports) {
    MomentComparison row;
    row.order = r.order;
    row.histogram_moment = est.moment(r.order);
    if (r.theoretical)
      row.reference = *r.theoretical;
    else if (!r.empirical.empty())
      row.reference = r.empirical.back().second;
    else
      fail(ErrorCode::kInvalidArgument, "moment report has neither theoretical nor empirical values");
    row.gap = row.histogram_moment - row.reference;
    out.push_back(row);
  }
  return out;
}

void write_histogram_csv(std::ostream& out, const DistributionEstimate& est, const std::vector<std::string>& header) {
  for (const auto& h : header) out << "# " << h << '\n';
  char buf[160];
  std::snprintf(buf, sizeof buf, "# Y=%.17g y_start=%.17g samples=%zu support_radius=%.17g", est.Y, est.y_start,
                est.sample_count, est.support_radius);
  out << buf << '\n';
  out << "# " << est.note << '\n';
  out << "bin_left,bin_right,mass\n";
  for (std::size_t b = 0; b < est.masses.size(); ++b) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", est.bin_edges[b], est.bin_edges[b + 1], est.masses[b]);
    out << buf << '\n';
  }
}

std::string to_json(const TailFit& fit) {
  nlohmann::ordered_json j;
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
  j["exponent_hat"] = opt(fit.exponent_hat);
  if (fit.beta && std::isinf(*fit.beta))
    j["beta"] = "infinity";
  else
    j["beta"] = opt(fit.beta);
  j["predicted_exponent"] = opt(fit.predicted_exponent);
  j["compact_support"] = fit.compact_support;
  j["predicted_compact"] = fit.predicted_compact;
  j["points_used"] = fit.points_used;
  j["S_values"] = fit.S_values;
  j["tail_masses"] = fit.tail_masses;
  return j.dump(2);
}

std::string to_json(std::span<const MomentComparison> rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["order"] = r.order;
    j["histogram_moment"] = r.histogram_moment;
    j["reference"] = r.reference;
    j["gap"] = r.gap;
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace apf
