#include "infotop/family.hpp"

#include <algorithm>

#include "infotop/error.hpp"

namespace infotop {

ScaleFamily::ScaleFamily(Observer base_obs, Rat low, Rat high, std::set<std::string> free)
    : base(std::move(base_obs)), lo(std::move(low)), hi(std::move(high)),
      free_dims(std::move(free)) {
  if (lo > hi) raise(ErrorCode::InvalidArgument, "scale range with lo > hi");
  if (lo < 0 || hi > 1)
    raise(ErrorCode::ScaleOutOfRange, "scale range must sit inside [0,1]");
  for (const auto& d : free_dims)
    base.ground()->dim_index(d);  // validates the name
}

ScaleMembership match_scale_member(const ScaleFamily& family, const Observer& candidate) {
  if (!candidate.same_ground(family.base))
    raise(ErrorCode::GroundMismatch, "candidate lives on a different ground set");

  const auto& ground = *family.base.ground();
  std::vector<std::size_t> constrained;
  for (std::size_t d = 0; d < ground.dims.size(); ++d)
    if (!family.free_dims.count(ground.dims[d])) constrained.push_back(d);
  if (constrained.empty())
    raise(ErrorCode::InvalidArgument, "family with every dimension free");

  // Pin the witness from the first nonzero constrained base entry.
  std::optional<Rat> witness;
  for (std::size_t p = 0; p < ground.points.size() && !witness; ++p)
    for (std::size_t d : constrained)
      if (family.base.at(p, d) != 0) {
        Rat r = candidate.at(p, d) / family.base.at(p, d);
        r.canonicalize();
        witness = r;
        break;
      }
  if (!witness)
    raise(ErrorCode::AmbiguousWitness,
          "base vanishes on every constrained entry; any scale matches");

  ScaleMembership result;
  if (*witness < family.lo || *witness > family.hi) {
    result.detail = "ratio " + rational_to_string(*witness) + " outside [" +
                    rational_to_string(family.lo) + "," + rational_to_string(family.hi) + "]";
    return result;
  }
  for (std::size_t p = 0; p < ground.points.size(); ++p)
    for (std::size_t d : constrained) {
      Rat expect = *witness * family.base.at(p, d);
      expect.canonicalize();
      if (candidate.at(p, d) != expect) {
        result.detail = "entry (" + ground.points[p] + "," + ground.dims[d] +
                        ") is not the scaled base value";
        return result;
      }
    }
  result.member = true;
  result.witness = witness;
  return result;
}

TwoLevelFamily::TwoLevelFamily(GroundPtr g, Rat background_level, Rat inside_level,
                               std::vector<std::size_t> allowed_points)
    : ground(std::move(g)), background(std::move(background_level)),
      inside(std::move(inside_level)), allowed(std::move(allowed_points)) {
  if (ground->dims.size() != 1)
    raise(ErrorCode::InvalidArgument, "two-level family needs a single dimension");
  if (!(inside < background))
    raise(ErrorCode::InvalidArgument, "inside level must sit strictly below the background");
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  for (std::size_t i : allowed)
    if (i >= ground->points.size())
      raise(ErrorCode::IndexOutOfRange, "allowed point index out of range");
}

Observer TwoLevelFamily::member_for(const std::vector<std::size_t>& inside_points) const {
  std::vector<Rat> values(ground->points.size(), background);
  for (std::size_t i : inside_points) {
    if (std::find(allowed.begin(), allowed.end(), i) == allowed.end())
      raise(ErrorCode::IndexOutOfRange, "inside point outside the allowed region");
    values[i] = inside;
  }
  return Observer(ground, std::move(values));
}

std::optional<std::vector<std::size_t>> TwoLevelFamily::inside_set(const Observer& obs) const {
  if (!obs.ground() || !(*obs.ground() == *ground)) return std::nullopt;
  std::vector<std::size_t> set;
  for (std::size_t p = 0; p < ground->points.size(); ++p) {
    const Rat& v = obs.at(p, 0);
    if (v == background) continue;
    if (v == inside &&
        std::find(allowed.begin(), allowed.end(), p) != allowed.end()) {
      set.push_back(p);
      continue;
    }
    return std::nullopt;
  }
  return set;
}

}  // namespace infotop
