#include "apf/hyperbolic/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "apf/error.hpp"
#include "apf/parallel.hpp"

namespace apf::hyp {

namespace {

struct Found {
  double distance;
  MoebiusMap map;
};

// a x + c y = gcd(a, c) >= 0
std::int64_t ext_gcd(std::int64_t a, std::int64_t c, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
    std::tie(old_t, t) = std::pair{t, old_t - q * t};
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

bool first_nonzero_positive(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const std::int64_t first = a != 0 ? a : (b != 0 ? b : (c != 0 ? c : d));
  return first > 0;
}

std::vector<Found> scan_modular(const GroupDescriptor& group, double s, HPoint z, HPoint w) {
  // cosh d(i, g i) = (a^2+b^2+c^2+d^2)/2 and d(i, g i) <= d(i, z) + s + d(g w, g i)
  const double reach = s + distance(z, kI) + distance(kI, w);
  const double bound = 2 * std::cosh(reach) * (1 + 1e-12) + 1e-9;
  if (bound > group.max_frobenius)
    fail(ErrorCode::kBudgetExceeded, "budget exceeded: Frobenius bound " + std::to_string(bound) +
                                         " above max " + std::to_string(group.max_frobenius));
  const auto limit = static_cast<std::int64_t>(std::floor(bound));
  const auto side = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(limit))));
  const auto rows = static_cast<std::size_t>(2 * side + 1);

  std::vector<std::vector<Found>> per_row(rows);
  parallel_chunks(rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t row = begin; row < end; ++row) {
      const std::int64_t a = static_cast<std::int64_t>(row) - side;
      for (std::int64_t c = -side; c <= side; ++c) {
        const std::int64_t q = a * a + c * c;
        if (q == 0 || q > limit) continue;
        std::int64_t x = 0, y = 0;
        if (ext_gcd(a, c, x, y) != 1) continue;
        // a d - b c = 1: (b, d) = (-y + k a, x + k c)
        const std::int64_t rem = limit - q;
        const double qd = static_cast<double>(q);
        const double lin = 2.0 * (static_cast<double>(-y) * a + static_cast<double>(x) * c);
        const double cst = static_cast<double>(y) * y + static_cast<double>(x) * x - static_cast<double>(rem);
        const double disc = lin * lin - 4 * qd * cst;
        if (disc < 0) continue;
        const double root = std::sqrt(disc);
        const auto k_lo = static_cast<std::int64_t>(std::floor((-lin - root) / (2 * qd))) - 1;
        const auto k_hi = static_cast<std::int64_t>(std::ceil((-lin + root) / (2 * qd))) + 1;
        for (std::int64_t k = k_lo; k <= k_hi; ++k) {
          const std::int64_t b = -y + k * a;
          const std::int64_t d = x + k * c;
          const __int128 norm = static_cast<__int128>(q) + static_cast<__int128>(b) * b + static_cast<__int128>(d) * d;
          if (norm > limit) continue;
          if (!first_nonzero_positive(a, b, c, d)) continue;
          const auto g = MoebiusMap::integer(a, b, c, d);
          const double dist = distance(z, apply_map(g, w));
          if (dist <= s + kDistanceTieTolerance) per_row[row].push_back({dist, g});
        }
      }
    }
  });
  std::vector<Found> out;
  for (auto& r : per_row) out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::array<std::int64_t, 4> rounded_key(const MoebiusMap& g) {
  const auto e = g.entries();
  std::array<std::int64_t, 4> k{};
  for (int i = 0; i < 4; ++i) k[static_cast<std::size_t>(i)] = std::llround(e[static_cast<std::size_t>(i)] * 1e8);
  return k;
}

std::vector<Found> search_generators(const GroupDescriptor& group, double s, HPoint z, HPoint w) {
  if (group.generators.empty()) fail(ErrorCode::kInvalidArgument, "generator mode needs at least one generator");
  std::vector<MoebiusMap> steps;
  for (const auto& g : group.generators) {
    steps.push_back(g);
    steps.push_back(g.inverse());
  }
  const double reach = s + distance(z, kI) + distance(kI, w) + group.prune_margin;
  std::set<std::array<std::int64_t, 4>> seen;
  std::deque<MoebiusMap> queue;
  const MoebiusMap identity = MoebiusMap::real(1, 0, 0, 1);
  queue.push_back(identity);
  seen.insert(rounded_key(identity));
  std::vector<Found> out;
  while (!queue.empty()) {
    const MoebiusMap g = queue.front();
    queue.pop_front();
    const double dist = distance(z, apply_map(g, w));
    if (dist <= s + kDistanceTieTolerance) out.push_back({dist, g});
    for (const auto& h : steps) {
      const MoebiusMap next = compose(g, h);
      if (distance(kI, apply_map(next, kI)) > reach) continue;
      if (!seen.insert(rounded_key(next)).second) continue;
      if (seen.size() > group.max_elements) fail(ErrorCode::kBudgetExceeded, "budget exceeded: BFS element cap");
      queue.push_back(next);
    }
  }
  return out;
}

}  // namespace

GroupDescriptor GroupDescriptor::from_generators(std::vector<MoebiusMap> generators, double prune_margin) {
  GroupDescriptor g;
  g.kind = Kind::kGenerators;
  g.generators = std::move(generators);
  g.prune_margin = prune_margin;
  return g;
}

std::size_t OrbitBall::count_within(double s) const {
  return static_cast<std::size_t>(std::upper_bound(distances.begin(), distances.end(), s + kDistanceTieTolerance) -
                                  distances.begin());
}

OrbitBall count_orbit(const GroupDescriptor& group, double s, HPoint z, HPoint w) {
  require(s >= 0 && std::isfinite(s), "radius s must be finite and >= 0");
  auto found = group.kind == GroupDescriptor::Kind::kModular ? scan_modular(group, s, z, w)
                                                            : search_generators(group, s, z, w);
  std::sort(found.begin(), found.end(), [](const Found& x, const Found& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    return x.map.entries() < y.map.entries();
  });
  OrbitBall ball;
  ball.radius = s;
  ball.z = z;
  ball.w = w;
  ball.maps.reserve(found.size());
  ball.distances.reserve(found.size());
  for (auto& f : found) {
    ball.maps.push_back(f.map);
    ball.distances.push_back(f.distance);
  }
  if (group.kind == GroupDescriptor::Kind::kGenerators) {
    ball.complete = false;
    ball.completeness_note = "heuristic completeness: generator BFS with displacement pruning";
  } else {
    ball.completeness_note = "complete: integer scan inside the Frobenius bound";
  }
  return ball;
}

}  // namespace apf::hyp
