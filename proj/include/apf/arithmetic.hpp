#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "apf/spectrum.hpp"
#include "apf/trigsum.hpp"

namespace apf {

/// Size limits for the exact generators. The defaults can be overridden process-wide.
struct Budgets {
  std::uint64_t sieve_limit = 10'000'000;  // largest x for psi(x)
  std::uint64_t count_limit = 1'000'000;   // largest x for R(x), D(x)
};
Budgets budgets();
void set_budgets(const Budgets& b);

struct ArithmeticTable {
  enum class Kind { kVonMangoldt, kSumTwoSquares, kDivisor };
  Kind kind = Kind::kVonMangoldt;
  std::uint64_t limit = 0;
  std::vector<double> log_values;      // Lambda(n), von Mangoldt only
  std::vector<std::int64_t> counts;    // r(n) or d(n)
};

ArithmeticTable von_mangoldt_table(std::uint64_t limit);
ArithmeticTable sum_of_two_squares_table(std::uint64_t limit);
ArithmeticTable divisor_table(std::uint64_t limit);

/// Strictly increasing positive zeta ordinates; first entry in [14.1, 14.2].
struct ZeroTable {
  std::vector<double> ordinates;

  static ZeroTable create(std::vector<double> ordinates);
  static ZeroTable load(const std::filesystem::path& path);
};

/// psi(x) = sum_{n <= x} Lambda(n), ascending.
double chebyshev_psi(double x);

/// Prefix sums of Lambda for repeated psi queries up to a fixed limit.
class ChebyshevPsi {
 public:
  explicit ChebyshevPsi(std::uint64_t limit);
  double operator()(double x) const;
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::vector<double> prefix_;
};

/// q(y) = (psi(e^y) - e^y) / e^{y/2}
double pnt_remainder(double y);

/// Frequencies gamma <= X, coefficients -1/(1/2 + i gamma).
Spectrum zeta_spectrum(const ZeroTable& zeros, double X);

/// #{(a, b) != (0, 0) : a^2 + b^2 <= x}
std::int64_t lattice_count_R(double x);

/// u(y) = (R(y^2) - pi y^2) / y^{1/2}
double gauss_remainder(double y);

enum class GaussNormalization {
  kClassical,  // 2 pi sqrt(n), r(n) e^{-3 i pi/4} / (2 pi n^{3/4})
  kAlternative,  // 4 pi sqrt(n), r(n) e^{-i pi/4} / (2 pi sqrt2 n^{3/4})
};

/// Exponential-sum spectrum of u(y) over n <= n_max with r(n) > 0.
Spectrum gauss_spectrum(std::int64_t n_max, GaussNormalization normalization = GaussNormalization::kClassical);

/// D(x) = sum_{n <= x} d(n), hyperbola method.
std::int64_t divisor_sum(double x);

/// v(y) = (D(y^2) - (y^2 log y^2 + (2C - 1) y^2)) / y^{1/2}
double divisor_remainder(double y);

/// Tabulated remainders on [y0, y1]; one table build per call.
SampledFunction pnt_remainder_grid(double y0, double y1, double step);
SampledFunction gauss_remainder_grid(double y0, double y1, double step);
SampledFunction divisor_remainder_grid(double y0, double y1, double step);

}  // namespace apf
