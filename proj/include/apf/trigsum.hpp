#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apf/spectrum.hpp"

namespace apf {

/// Real function tabulated on y0, y0 + step, ..., y0 + (n-1) step.
struct SampledFunction {
  double y0 = 0;
  double step = 1;
  std::vector<double> values;
  std::optional<double> cutoff;             // X used, when a single X applies
  std::optional<CutoffSchedule> schedule;   // X(Y) rule, when built from a schedule

  std::size_t size() const { return values.size(); }
  double y_at(std::size_t k) const { return y0 + static_cast<double>(k) * step; }
  double y_end() const { return values.empty() ? y0 : y_at(values.size() - 1); }
};

/// 2 Re sum_{lambda_n <= X} c_n e^{i lambda_n y}, ascending order, compensated.
double eval_sum(const Spectrum& spec, double y, double X);

/// The two-sided accumulator sum (c e^{i theta} + conj(c) e^{-i theta}) before taking
/// the real part. Its imaginary part is a realness residual.
Complex eval_sum_two_sided(const Spectrum& spec, double y, double X);

/// Tabulates S(y, X) on [y0, y1]. With fixed_Y, X = schedule(y1) at every point;
/// otherwise X = schedule(y) pointwise. Rejects step * lambda_max(X) > 0.5.
SampledFunction eval_grid(const Spectrum& spec, double y0, double y1, double step,
                          const CutoffSchedule& schedule, bool fixed_Y = true);

/// (lambda <= T, lambda > T) partition.
std::pair<Spectrum, Spectrum> split_truncation(const Spectrum& spec, double T);

inline constexpr double kAliasingLimit = 0.5;

/// `y,value` rows preceded by `#` comment lines.
void write_sampled_csv(std::ostream& out, const SampledFunction& f, const std::vector<std::string>& header = {});

}  // namespace apf
