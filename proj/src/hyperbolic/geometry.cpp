#include "apf/hyperbolic/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "apf/error.hpp"

namespace apf::hyp {

namespace {

template <class T>
void normalize_sign(T& a, T& b, T& c, T& d) {
  const T first = a != 0 ? a : (b != 0 ? b : (c != 0 ? c : d));
  if (first < 0) {
    a = -a;
    b = -b;
    c = -c;
    d = -d;
  }
}

std::int64_t checked(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::kBudgetExceeded, "integer Moebius entries overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

HPoint HPoint::create(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0))
    fail(ErrorCode::kInvalidArgument, "point must have finite coordinates and Im > 0");
  return {x, y};
}

double point_pair_invariant(HPoint z, HPoint w) {
  const double dx = z.x - w.x, dy = z.y - w.y;
  return (dx * dx + dy * dy) / (4 * z.y * w.y);
}

double distance(HPoint z, HPoint w) { return 2 * std::asinh(std::sqrt(point_pair_invariant(z, w))); }

MoebiusMap MoebiusMap::integer(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const __int128 det = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
  if (det != 1) fail(ErrorCode::kInvalidArgument, "integer map must have ad - bc = 1");
  normalize_sign(a, b, c, d);
  return MoebiusMap(IntegerEntries{a, b, c, d});
}

MoebiusMap MoebiusMap::real(double a, double b, double c, double d) {
  if (std::abs(a * d - b * c - 1) > 1e-12) fail(ErrorCode::kInvalidArgument, "map must have ad - bc = 1");
  normalize_sign(a, b, c, d);
  return MoebiusMap(RealEntries{a, b, c, d});
}

std::array<double, 4> MoebiusMap::entries() const {
  if (is_integer()) {
    const auto& e = integer_entries();
    return {static_cast<double>(e.a), static_cast<double>(e.b), static_cast<double>(e.c), static_cast<double>(e.d)};
  }
  const auto& e = std::get<RealEntries>(entries_);
  return {e.a, e.b, e.c, e.d};
}

MoebiusMap MoebiusMap::inverse() const {
  if (is_integer()) {
    const auto& e = integer_entries();
    return integer(e.d, -e.b, -e.c, e.a);
  }
  const auto& e = std::get<RealEntries>(entries_);
  RealEntries inv{e.d, -e.b, -e.c, e.a};
  normalize_sign(inv.a, inv.b, inv.c, inv.d);
  return MoebiusMap(inv);
}

MoebiusMap compose(const MoebiusMap& g, const MoebiusMap& h) {
  if (g.is_integer() && h.is_integer()) {
    const auto& x = g.integer_entries();
    const auto& y = h.integer_entries();
    using W = __int128;
    return MoebiusMap::integer(checked(W(x.a) * y.a + W(x.b) * y.c), checked(W(x.a) * y.b + W(x.b) * y.d),
                               checked(W(x.c) * y.a + W(x.d) * y.c), checked(W(x.c) * y.b + W(x.d) * y.d));
  }
  const auto x = g.entries();
  const auto y = h.entries();
  RealEntries r{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                x[2] * y[1] + x[3] * y[3]};
  normalize_sign(r.a, r.b, r.c, r.d);
  return MoebiusMap(r);
}

std::string MoebiusMap::to_string() const {
  char buf[128];
  if (is_integer()) {
    const auto& e = integer_entries();
    std::snprintf(buf, sizeof buf, "%lld %lld %lld %lld", static_cast<long long>(e.a), static_cast<long long>(e.b),
                  static_cast<long long>(e.c), static_cast<long long>(e.d));
  } else {
    const auto e = entries();
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g", e[0], e[1], e[2], e[3]);
  }
  return buf;
}

HPoint apply_map(const MoebiusMap& g, HPoint z) {
  const auto [a, b, c, d] = g.entries();
  const double re_den = c * z.x + d;
  const double im_den = c * z.y;
  const double den = re_den * re_den + im_den * im_den;
  // (a z + b) conj(c z + d) / |c z + d|^2 with ad - bc = 1
  const double x = ((a * z.x + b) * re_den + a * z.y * im_den) / den;
  const double y = z.y / den;
  return {x, y};
}

HPoint parse_point(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.empty()) fail(ErrorCode::kParse, "empty point");
  if (s.find(',') != std::string::npos) {
    const auto comma = s.find(',');
    try {
      return HPoint::create(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
    } catch (const std::logic_error&) {
      fail(ErrorCode::kParse, "cannot parse point '" + text + "'");
    }
  }
  if (s.back() != 'i') fail(ErrorCode::kParse, "point '" + text + "' must have an imaginary part");
  s.pop_back();
  // split real and imaginary parts at the last sign that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  try {
    const double re = re_part.empty() ? 0.0 : std::stod(re_part);
    return HPoint::create(re, std::stod(im_part));
  } catch (const std::logic_error&) {
    fail(ErrorCode::kParse, "cannot parse point '" + text + "'");
  }
}

}  // namespace apf::hyp
