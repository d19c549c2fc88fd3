#pragma once

#include <string>
#include <vector>

#include "infotop/family.hpp"
#include "infotop/observer.hpp"
#include "infotop/topology.hpp"

namespace infotop {

// Total map between point sets, stored as target indices per source point.
// Composition follows the right-to-left convention: compose(f, g) applies g
// first, then f.
struct PointMap {
  GroundPtr source;
  GroundPtr target;
  std::vector<std::size_t> image;

  PointMap() = default;
  PointMap(GroundPtr src, GroundPtr tgt, std::vector<std::size_t> img);

  std::size_t apply(std::size_t source_point) const { return image[source_point]; }
  bool is_bijection() const;
};

PointMap identity_map(const GroundPtr& ground);
PointMap compose(const PointMap& f, const PointMap& g);
PointMap iterate_map(const PointMap& f, unsigned power);
PointMap inverse(const PointMap& f);

// obs ∘ f: evaluate obs at f(y). obs lives on f's target; the result lives on
// f's source.
Observer compose(const Observer& obs, const PointMap& f);

struct ContinuityReport {
  std::vector<CheckLine> checks;
  bool continuous() const {
    for (const auto& c : checks)
      if (!c.holds()) return false;
    return true;
  }
};

// f : Y -> X pulls X-side opens back to the Y side. `yside` is the topology
// on f's source, `xside` the one on f's target. Checks the designated
// pullback, open pullbacks, pullback membership in the Y-side universe, and
// that composition distributes over both operations.
ContinuityReport continuity_check(const PointMap& f, const Topology<Observer>& yside,
                                  const Topology<Observer>& xside,
                                  std::size_t pair_cap = 4096);

// New space on f's source: universe, opens and distinguished elements are the
// pullbacks of the input's. Validates before returning.
Topology<Observer> pullback_space(const PointMap& f, const Topology<Observer>& t);

// Finite product: elements are tuples of factor elements with componentwise
// operations, opens are all tuples of factor opens. All factors must share
// the same dimension list.
struct ProductSpace {
  Topology<std::vector<Observer>> topology;
  std::vector<std::string> point_tuples;  // rendered product points, row-major
};

ProductSpace product_space(const std::vector<Topology<Observer>>& factors);

// Finite topology backed by a scale family {r*base | r in [lo,hi]} (no free
// dimensions), validated by reasoning on the scale parameter instead of
// enumeration.
struct ScaleTopology {
  ScaleFamily family;
  Observer designated;  // hi * base
  Observer least;       // lo * base

  explicit ScaleTopology(ScaleFamily f);
};

TopologyReport validate_scale_topology(const ScaleTopology& t);

// Topology whose opens are all members of a two-level family; the designated
// element is the all-background member and the least element the member that
// sits at the inside level on the whole allowed region.
struct TwoLevelTopology {
  TwoLevelFamily family;
  Observer designated;
  Observer least;

  explicit TwoLevelTopology(TwoLevelFamily f);
};

TopologyReport validate_two_level_topology(const TwoLevelTopology& t);

}  // namespace infotop
