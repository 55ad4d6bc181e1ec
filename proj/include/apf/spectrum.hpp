#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace apf {

using Complex = std::complex<double>;

/// Frequencies and coefficients of an almost periodic expansion.
///
/// Stored in the two-sided convention: the deterministic part is
///   sum_n (c_n e^{i lambda_n y} + conj(c_n) e^{-i lambda_n y}) = 2 Re sum_n c_n e^{i lambda_n y}.
/// Frequencies are strictly increasing and positive; all coefficients are finite.
/// Immutable after construction.
class Spectrum {
 public:
  Spectrum() = default;

  /// Validates and takes ownership. Throws apf::Error on any violated invariant.
  static Spectrum create(std::vector<double> frequencies, std::vector<Complex> coefficients);

  /// Builds from coefficients r_n of a one-sided expansion Re sum r_n e^{i lambda_n y};
  /// stores c_n = r_n / 2.
  static Spectrum from_one_sided(std::vector<double> frequencies, std::span<const Complex> r);

  std::span<const double> frequencies() const { return frequencies_; }
  std::span<const Complex> coefficients() const { return coefficients_; }
  std::size_t size() const { return frequencies_.size(); }
  bool empty() const { return frequencies_.empty(); }
  double max_frequency() const { return frequencies_.empty() ? 0.0 : frequencies_.back(); }

  /// Number of leading frequencies with lambda <= cutoff.
  std::size_t count_up_to(double cutoff) const;

  /// sum |c_n| over lambda_n <= cutoff, ascending order.
  double abs_coefficient_sum(double cutoff) const;

  /// Stable FNV-1a digest of the canonical CSV text.
  std::uint64_t digest() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> frequencies_;
  std::vector<Complex> coefficients_;
};

/// X(Y) for the truncation point of the exponential sum.
struct CutoffSchedule {
  enum class Kind { kExponential, kLinear, kConstant };
  Kind kind = Kind::kConstant;
  double x0 = 1.0;  // floor: X(Y) = max(x0, f(Y))

  double operator()(double Y) const;
  std::string describe() const;

  static CutoffSchedule exponential(double x0 = 1.0) { return {Kind::kExponential, x0}; }
  static CutoffSchedule linear(double x0 = 1.0) { return {Kind::kLinear, x0}; }
  static CutoffSchedule constant(double x0) { return {Kind::kConstant, x0}; }
};

struct Window {
  double T = 0;
  double sum = 0;
};

struct DecayFit {
  double beta_hat = 0;
  double r_squared = 0;
  std::vector<Window> windows;  // all windows offered, including zero ones
  std::size_t excluded_zero = 0;
};

struct LoadWarnings {
  std::vector<std::string> messages;
};

Spectrum parse_spectrum(std::istream& in, LoadWarnings* warnings = nullptr);
Spectrum load_spectrum(const std::filesystem::path& path, LoadWarnings* warnings = nullptr);

/// CSV `lambda,re_c,im_c` with 17 significant digits.
void write_spectrum(std::ostream& out, const Spectrum& spec, bool with_header = true);
void save_spectrum(const std::filesystem::path& path, const Spectrum& spec);

/// Window sums of |r_n| = |2 c_n| over lambda in [T, T+1) for integer T in [t_min, t_max).
std::vector<Window> window_coefficient_sums(const Spectrum& spec, double t_min, double t_max);

/// Least-squares slope of log(sum) against log(T); beta_hat = -slope.
DecayFit fit_beta(std::span<const Window> windows);

/// Plain ordinate table, one positive value per line, ascending.
std::vector<double> parse_ordinates(std::istream& in);
std::vector<double> load_ordinates(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace apf
