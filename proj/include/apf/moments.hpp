#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apf/spectrum.hpp"
#include "apf/trigsum.hpp"

namespace apf {

/// One ordered member of a diagonal set: signs[s] * lambda[indices[s]] sums to theta.
struct ResonantTuple {
  std::vector<std::size_t> indices;
  std::vector<int> signs;  // +1 / -1; -1 conjugates the coefficient
  double theta = 0;
  Complex amplitude;
};

enum class ResonanceMode {
  kAuto,      // exact when every frequency is a small-denominator rational
  kExact,     // integer arithmetic on rescaled frequencies, tolerance 0
  kFloating,  // |theta| <= tolerance
};

struct MomentOptions {
  ResonanceMode mode = ResonanceMode::kAuto;
  double tolerance = -1;  // < 0: 1e-9 * lambda_max (floating mode only)
  std::size_t max_terms = 50'000'000;
  std::size_t collect_tuples = 0;  // keep up to this many tuples in the report
};

struct MomentReport {
  int order = 0;
  double y_start = 0;
  std::vector<std::pair<double, double>> empirical;  // (Y, (1/Y) int f^n)
  std::optional<double> theoretical;                 // only when enumeration completed
  double partial_value = 0;                          // sum so far when the budget ran out
  bool budget_exceeded = false;
  bool exact_mode = false;
  double tolerance = 0;
  std::size_t resonance_count = 0;
  double imag_residual = 0;   // |Im sum A_g|
  double amplitude_mass = 0;  // sum |A_g|
  std::size_t spectrum_size = 0;
  double max_frequency = 0;
  std::vector<ResonantTuple> tuples;
};

/// (1/Y) * integral_{y0}^{Y} f(y)^n dy by composite Simpson on the stored grid.
double empirical_moment(const SampledFunction& f, int n, double Y);

/// L_n as the sum of A_g(c_J) over sign-resonant ordered tuples, found by
/// meet-in-the-middle matching of sorted signed half-sums.
MomentReport theoretical_moment(const Spectrum& spec, int n, const MomentOptions& options = {});

struct ConvergenceOptions {
  double max_step = 0.01;  // grid step cap; the aliasing guard may force smaller
  bool attach_theoretical = true;
  MomentOptions moment;
};

/// Empirical moments along Y_list with X = schedule(Y) at each horizon.
MomentReport moment_convergence(const Spectrum& spec, int n, const CutoffSchedule& schedule,
                                std::span<const double> Y_list, const ConvergenceOptions& options = {});

/// Grid step for [0, Y] that passes the aliasing guard at cutoff X and gives an even
/// number of Simpson intervals.
double simpson_step(const Spectrum& spec, double Y, double X, double max_step);

/// Integer rescaling of the frequencies, if they are all rationals with denominators <= 10^6.
std::optional<std::vector<std::int64_t>> integer_frequencies(std::span<const double> frequencies);

std::string to_json(const MomentReport& report);

}  // namespace apf
