#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apf/moments.hpp"
#include "apf/spectrum.hpp"
#include "apf/trigsum.hpp"

namespace apf {

/// Occupation-time histogram of a sampled function over [y_start, Y].
struct DistributionEstimate {
  std::vector<double> bin_edges;  // strictly increasing, masses.size() + 1 entries
  std::vector<double> masses;     // sum to 1 within 1e-12
  double Y = 0;
  double y_start = 0;
  std::size_t sample_count = 0;
  double support_radius = 0;  // max |f| observed
  bool point_mass = false;    // degenerate range: all mass at the single bin midpoint
  std::string note;

  std::size_t bins() const { return masses.size(); }
  double midpoint(std::size_t b) const { return 0.5 * (bin_edges[b] + bin_edges[b + 1]); }
  /// mu(|x| >= S), bins treated as uniform within their edges.
  double tail_mass(double S) const;
  /// mu([a, b]) with the same within-bin convention.
  double interval_mass(double a, double b) const;
  double moment(int n) const;
};

struct TailFit {
  std::optional<double> exponent_hat;  // absent when support is compact or too few points
  std::vector<double> S_values;
  std::vector<double> tail_masses;
  std::optional<double> beta;
  std::optional<double> predicted_exponent;  // (2 beta - 1)/(2 - 2 beta) for beta < 1
  bool compact_support = false;             // observed: a tail mass is exactly zero
  bool predicted_compact = false;           // beta > 1
  std::size_t points_used = 0;
};

struct MomentComparison {
  int order = 0;
  double histogram_moment = 0;
  double reference = 0;  // theoretical L_n when available, else the last empirical value
  double gap = 0;
};

DistributionEstimate estimate_distribution(const SampledFunction& f, double Y, int bins);

/// estimate_distribution applied to phi_T, the lambda <= T part of the spectrum,
/// tabulated on [0, Y].
DistributionEstimate truncated_distribution(const Spectrum& spec, double T, double Y, int bins,
                                            double max_step = 0.01);

/// Predicted tail exponent; nullopt for beta >= 1.
std::optional<double> predicted_tail_exponent(double beta);

TailFit fit_tails(const DistributionEstimate& est, std::span<const double> S_grid,
                  std::optional<double> beta = std::nullopt);

/// Tail fit for the distribution of a finite spectrum. Its window sums vanish past the largest
/// frequency, so beta is taken as infinite and compact support (radius sum 2|c_n|) is predicted.
TailFit fit_tails(const DistributionEstimate& est, std::span<const double> S_grid, const Spectrum& spec);

std::vector<MomentComparison> compare_moments(const DistributionEstimate& est, std::span<const MomentReport> reports);

void write_histogram_csv(std::ostream& out, const DistributionEstimate& est, const std::vector<std::string>& header = {});
std::string to_json(const TailFit& fit);
std::string to_json(std::span<const MomentComparison> rows);

}  // namespace apf
