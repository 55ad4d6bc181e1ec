#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>

namespace apf::hyp {

/// Point of the upper half-plane.
struct HPoint {
  double x = 0;
  double y = 1;

  static HPoint create(double x, double y);
  std::complex<double> as_complex() const { return {x, y}; }
  friend bool operator==(const HPoint&, const HPoint&) = default;
};

inline constexpr HPoint kI{0.0, 1.0};

/// u(z, w) = |z - w|^2 / (4 Im z Im w); cosh d(z, w) = 1 + 2u.
double point_pair_invariant(HPoint z, HPoint w);

/// Hyperbolic distance, computed as 2 asinh(sqrt(u)).
double distance(HPoint z, HPoint w);

struct IntegerEntries {
  std::int64_t a, b, c, d;
  friend auto operator<=>(const IntegerEntries&, const IntegerEntries&) = default;
};

struct RealEntries {
  double a, b, c, d;
  friend bool operator==(const RealEntries&, const RealEntries&) = default;
};

/// Element of PSL(2, R): exact integer entries (arithmetic-group mode) or reals.
/// Always sign-normalized so that the first nonzero of (a, b, c, d) is positive,
/// which identifies +g and -g.
class MoebiusMap {
 public:
  MoebiusMap() : entries_(IntegerEntries{1, 0, 0, 1}) {}

  /// Throws unless ad - bc == 1 exactly.
  static MoebiusMap integer(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  /// Throws unless |ad - bc - 1| <= 1e-12.
  static MoebiusMap real(double a, double b, double c, double d);

  bool is_integer() const { return std::holds_alternative<IntegerEntries>(entries_); }
  const IntegerEntries& integer_entries() const { return std::get<IntegerEntries>(entries_); }
  std::array<double, 4> entries() const;

  MoebiusMap inverse() const;
  friend MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h);  // g o h
  friend bool operator==(const MoebiusMap&, const MoebiusMap&) = default;

  std::string to_string() const;

 private:
  explicit MoebiusMap(std::variant<IntegerEntries, RealEntries> e) : entries_(e) {}
  std::variant<IntegerEntries, RealEntries> entries_;
};

MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h);

/// (a z + b) / (c z + d)
HPoint apply_map(const MoebiusMap& g, HPoint z);

/// Parses "i", "2i", "0.5+1.5i", "-0.5+i", or "x,y".
HPoint parse_point(const std::string& text);

}  // namespace apf::hyp
