#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "infotop/observer.hpp"

namespace infotop {

// Parametric family {r * base | r in [lo, hi]} on the constrained
// dimensions; entries on `free_dims` are unconstrained. With no free
// dimensions the family can back a topology symbolically (least element
// lo*base, designated hi*base).
struct ScaleFamily {
  Observer base;
  Rat lo, hi;
  std::set<std::string> free_dims;

  ScaleFamily(Observer base_obs, Rat low, Rat high, std::set<std::string> free = {});
};

struct ScaleMembership {
  bool member = false;
  std::optional<Rat> witness;  // the unique r when the base pins one down
  std::string detail;
};

// Decides whether `candidate` equals r*base on the constrained dimensions for
// some r in the range. The witness is unique whenever the base has a nonzero
// constrained entry; a base that vanishes on every constrained entry admits
// any scale and is reported as an error instead of an arbitrary pick.
ScaleMembership match_scale_member(const ScaleFamily& family, const Observer& candidate);

// Two-level family: every member takes either the background level or the
// inside level at each point, and may differ from the background only inside
// `allowed` points. Used for the truncated window fixtures where members are
// determined by their inside-level point set. Single dimension.
struct TwoLevelFamily {
  GroundPtr ground;
  Rat background;             // level outside the difference set
  Rat inside;                 // level on the difference set (inside < background)
  std::vector<std::size_t> allowed;  // point indices where members may differ

  TwoLevelFamily(GroundPtr g, Rat background_level, Rat inside_level,
                 std::vector<std::size_t> allowed_points);

  Observer member_for(const std::vector<std::size_t>& inside_points) const;
  // Point indices where the observer sits at the inside level; nullopt when
  // the observer is not a family member.
  std::optional<std::vector<std::size_t>> inside_set(const Observer& obs) const;
  bool contains(const Observer& obs) const { return inside_set(obs).has_value(); }

  Observer designated() const { return member_for({}); }          // background everywhere
  Observer least() const { return member_for(allowed); }          // inside on all allowed
};

}  // namespace infotop
