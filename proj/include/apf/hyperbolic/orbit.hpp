#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apf/hyperbolic/geometry.hpp"

namespace apf::hyp {

/// Which group to count in.
struct GroupDescriptor {
  enum class Kind {
    kModular,     // PSL(2, Z) by integer-matrix scan; complete
    kGenerators,  // breadth-first search over words; heuristic completeness
  };
  Kind kind = Kind::kModular;
  std::vector<MoebiusMap> generators;
  double prune_margin = 2.0;            // extra displacement allowed while searching
  std::size_t max_elements = 2'000'000;
  double max_frobenius = 1e8;           // a^2+b^2+c^2+d^2 scan bound for kModular

  static GroupDescriptor modular() { return {}; }
  static GroupDescriptor from_generators(std::vector<MoebiusMap> generators, double prune_margin = 2.0);
};

/// The maps gamma with d(z, gamma w) <= radius, sorted by distance.
struct OrbitBall {
  double radius = 0;
  HPoint z, w;
  std::vector<MoebiusMap> maps;
  std::vector<double> distances;  // ascending, aligned with maps
  bool complete = true;
  std::string completeness_note;

  std::size_t count() const { return maps.size(); }
  /// N(s) for s <= radius.
  std::size_t count_within(double s) const;
};

/// Distances within this much of the radius count as inside.
inline constexpr double kDistanceTieTolerance = 1e-12;

OrbitBall count_orbit(const GroupDescriptor& group, double s, HPoint z, HPoint w);

}  // namespace apf::hyp
