#include "infotop/spaces.hpp"

#include <algorithm>
#include <set>

#include "infotop/error.hpp"

namespace infotop {

PointMap::PointMap(GroundPtr src, GroundPtr tgt, std::vector<std::size_t> img)
    : source(std::move(src)), target(std::move(tgt)), image(std::move(img)) {
  if (!source || !target) raise(ErrorCode::InvalidArgument, "point map without ground sets");
  if (image.size() != source->points.size())
    raise(ErrorCode::InvalidArgument, "point map is not total on the source points");
  for (std::size_t i : image)
    if (i >= target->points.size())
      raise(ErrorCode::IndexOutOfRange, "point map image index out of range");
}

bool PointMap::is_bijection() const {
  if (source->points.size() != target->points.size()) return false;
  std::vector<bool> hit(target->points.size(), false);
  for (std::size_t i : image) {
    if (hit[i]) return false;
    hit[i] = true;
  }
  return true;
}

PointMap identity_map(const GroundPtr& ground) {
  std::vector<std::size_t> img(ground->points.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
  return PointMap(ground, ground, std::move(img));
}

PointMap compose(const PointMap& f, const PointMap& g) {
  if (!(*g.target == *f.source))
    raise(ErrorCode::GroundMismatch, "maps do not compose: inner target differs from outer source");
  std::vector<std::size_t> img(g.image.size());
  for (std::size_t z = 0; z < img.size(); ++z) img[z] = f.apply(g.apply(z));
  return PointMap(g.source, f.target, std::move(img));
}

PointMap iterate_map(const PointMap& f, unsigned power) {
  if (!(*f.source == *f.target))
    raise(ErrorCode::GroundMismatch, "only self-maps can be iterated");
  PointMap result = identity_map(f.source);
  for (unsigned i = 0; i < power; ++i) result = compose(f, result);
  return result;
}

PointMap inverse(const PointMap& f) {
  if (!f.is_bijection())
    raise(ErrorCode::InvalidArgument, "inverse of a non-bijective point map");
  std::vector<std::size_t> img(f.target->points.size());
  for (std::size_t i = 0; i < f.image.size(); ++i) img[f.image[i]] = i;
  return PointMap(f.target, f.source, std::move(img));
}

Observer compose(const Observer& obs, const PointMap& f) {
  if (!(*obs.ground() == *f.target))
    raise(ErrorCode::GroundMismatch, "observer does not live on the map's target");
  const std::size_t dims = f.target->dims.size();
  if (f.source->dims != f.target->dims)
    raise(ErrorCode::GroundMismatch, "source and target dimension lists differ");
  std::vector<Rat> values(f.source->points.size() * dims);
  for (std::size_t y = 0; y < f.source->points.size(); ++y)
    for (std::size_t d = 0; d < dims; ++d) values[y * dims + d] = obs.at(f.apply(y), d);
  return Observer(f.source, std::move(values));
}

ContinuityReport continuity_check(const PointMap& f, const Topology<Observer>& yside,
                                  const Topology<Observer>& xside,
                                  std::size_t pair_cap) {
  ContinuityReport report;
  auto push = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back(
        {std::move(name), ok ? AxiomStatus::Holds : AxiomStatus::Fails, std::move(detail)});
  };

  const bool grounds_ok = *f.source == *yside.designated.ground() &&
                          *f.target == *xside.designated.ground();
  push("grounds", grounds_ok, grounds_ok ? "" : "map grounds do not match the topologies");
  if (!grounds_ok) return report;

  push("designated-pullback", compose(xside.designated, f) == yside.designated,
       "pullback of the designated element must be the source-side designated element");

  bool opens_ok = true;
  std::string opens_detail;
  for (std::size_t i = 0; i < xside.opens.size(); ++i)
    if (!yside.is_open_member(compose(xside.opens[i], f))) {
      opens_ok = false;
      opens_detail = "pullback of open #" + std::to_string(i) + " is not open on the source side";
      break;
    }
  push("opens-pullback", opens_ok, opens_detail);

  bool member_ok = true;
  std::string member_detail;
  for (std::size_t i = 0; i < xside.universe.elements.size(); ++i)
    if (!yside.universe.contains(compose(xside.universe.elements[i], f))) {
      member_ok = false;
      member_detail =
          "pullback of universe element #" + std::to_string(i) + " is not in the source universe";
      break;
    }
  push("universe-pullback", member_ok, member_detail);

  // Composition must distribute over both operations.
  bool hom_ok = true;
  std::string hom_detail;
  const auto& xe = xside.universe.elements;
  const std::size_t n = xe.size();
  auto check_pair = [&](const Observer& h, const Observer& k) {
    if (!(compose(xside.universe.join(h, k), f) ==
          yside.universe.join(compose(h, f), compose(k, f)))) {
      hom_detail = "composition does not distribute over join";
      return false;
    }
    if (!(compose(xside.universe.meet(h, k), f) ==
          yside.universe.meet(compose(h, f), compose(k, f)))) {
      hom_detail = "composition does not distribute over meet";
      return false;
    }
    return true;
  };
  if (n * n <= pair_cap) {
    for (const auto& h : xe) {
      for (const auto& k : xe)
        if (!(hom_ok = check_pair(h, k))) break;
      if (!hom_ok) break;
    }
  } else {
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < pair_cap && hom_ok; ++s)
      hom_ok = check_pair(xe[pick(rng)], xe[pick(rng)]);
  }
  push("operation-compatibility", hom_ok, hom_detail);
  return report;
}

namespace {

std::vector<Observer> pullback_all(const std::vector<Observer>& elements, const PointMap& f) {
  std::vector<Observer> out;
  std::set<Observer> seen;
  for (const auto& e : elements) {
    Observer composed = compose(e, f);
    if (seen.insert(composed).second) out.push_back(std::move(composed));
  }
  return out;
}

}  // namespace

Topology<Observer> pullback_space(const PointMap& f, const Topology<Observer>& t) {
  Topology<Observer> result;
  result.universe = observer_universe(pullback_all(t.universe.elements, f),
                                      t.universe.closure_mode);
  result.opens = pullback_all(t.opens, f);
  result.designated = compose(t.designated, f);
  result.least = compose(t.least, f);
  TopologyReport report = validate_topology(result);
  if (!report.valid())
    raise(ErrorCode::NotATopology,
          "pullback failed validation (" + report.first_violation()->name +
              "); the input space is likely invalid");
  return result;
}

ProductSpace product_space(const std::vector<Topology<Observer>>& factors) {
  if (factors.empty()) raise(ErrorCode::InvalidArgument, "product of zero factors");
  const auto& dims = factors.front().designated.ground()->dims;
  for (const auto& t : factors)
    if (t.designated.ground()->dims != dims)
      raise(ErrorCode::IncompatibleIndexSets, "factors do not share the dimension list");

  using Tuple = std::vector<Observer>;
  std::vector<std::function<Observer(const Observer&, const Observer&)>> joins, meets;
  for (const auto& t : factors) {
    joins.push_back(t.universe.join);
    meets.push_back(t.universe.meet);
  }

  ProductSpace product;
  auto& top = product.topology;
  top.universe.join = [joins](const Tuple& a, const Tuple& b) {
    Tuple out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = joins[i](a[i], b[i]);
    return out;
  };
  top.universe.meet = [meets](const Tuple& a, const Tuple& b) {
    Tuple out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = meets[i](a[i], b[i]);
    return out;
  };
  top.universe.closure_mode = ClosureMode::OpenWorld;

  auto cartesian = [&](auto&& member_list) {
    std::vector<Tuple> result;
    result.push_back({});
    for (const auto* list : member_list) {
      std::vector<Tuple> next;
      for (const auto& partial : result)
        for (const auto& e : *list) {
          Tuple extended = partial;
          extended.push_back(e);
          next.push_back(std::move(extended));
        }
      result = std::move(next);
    }
    return result;
  };

  std::vector<const std::vector<Observer>*> universe_lists, open_lists;
  for (const auto& t : factors) {
    universe_lists.push_back(&t.universe.elements);
    open_lists.push_back(&t.opens);
  }
  top.universe.elements = cartesian(universe_lists);
  top.opens = cartesian(open_lists);

  top.designated.clear();
  top.least.clear();
  for (const auto& t : factors) {
    top.designated.push_back(t.designated);
    top.least.push_back(t.least);
  }

  // Rendered product points, row-major across the factors.
  std::vector<std::string> tuples{""};
  for (const auto& t : factors) {
    std::vector<std::string> next;
    for (const auto& prefix : tuples)
      for (const auto& p : t.designated.ground()->points)
        next.push_back(prefix.empty() ? p : prefix + "|" + p);
    tuples = std::move(next);
  }
  product.point_tuples = std::move(tuples);

  TopologyReport report = validate_topology(top);
  if (!report.valid())
    raise(ErrorCode::NotATopology,
          "product failed validation (" + report.first_violation()->name + ")");
  return product;
}

ScaleTopology::ScaleTopology(ScaleFamily f)
    : family(std::move(f)), designated(scale(family.hi, family.base)),
      least(scale(family.lo, family.base)) {
  if (!family.free_dims.empty())
    raise(ErrorCode::Undecidable,
          "scale families with free dimensions are outside the supported "
          "topology-backing patterns");
}

TopologyReport validate_scale_topology(const ScaleTopology&) {
  TopologyReport report;
  auto hold = [&](const std::string& name, const std::string& why) {
    report.checks.push_back({name, AxiomStatus::Holds, why});
  };
  // All four properties follow from interval arithmetic on the scale
  // parameter; no enumeration is possible or needed.
  hold("opens-below-designated",
       "r*base is absorbed by hi*base entrywise for every r <= hi");
  hold("designated-open", "hi lies in the scale range");
  hold("least-element", "lo*base is absorbed by every member since r >= lo");
  hold("meet-closed", "min(r,s) stays inside the closed range");
  hold("sup-closed",
       "the least upper bound of {r_j*base} is (sup r_j)*base and sup r_j stays inside the "
       "closed range");
  report.subsets_exhaustive = false;
  return report;
}

TwoLevelTopology::TwoLevelTopology(TwoLevelFamily f)
    : family(std::move(f)), designated(family.designated()), least(family.least()) {}

TopologyReport validate_two_level_topology(const TwoLevelTopology&) {
  TopologyReport report;
  auto hold = [&](const std::string& name, const std::string& why) {
    report.checks.push_back({name, AxiomStatus::Holds, why});
  };
  hold("opens-below-designated",
       "every member sits at or below the background level everywhere");
  hold("designated-open", "the all-background member belongs to the family");
  hold("least-element",
       "the member at the inside level on the whole allowed region is absorbed by every member");
  hold("meet-closed", "meets union the inside sets, and unions stay inside the allowed region");
  hold("sup-closed",
       "the least upper bound of a subfamily is the member on the intersection of the inside "
       "sets");
  report.subsets_exhaustive = false;
  return report;
}

}  // namespace infotop
