#include "infotop/covers.hpp"

#include <algorithm>
#include <map>

namespace infotop {

CoverContext<Observer> cover_context(const ScaleTopology& t) {
  CoverContext<Observer> ctx;
  ctx.meet = [](const Observer& a, const Observer& b) { return meet(a, b); };
  ctx.join = [](const Observer& a, const Observer& b) { return join(a, b); };
  ctx.designated = t.designated;
  const ScaleFamily family = t.family;
  ctx.open_member = [family](const Observer& obs) {
    return match_scale_member(family, obs).member;
  };
  // The least upper bound of finitely many members is the member at the
  // maximum of their scales.
  ctx.sup_of = [family](const std::vector<Observer>& members) -> std::vector<Observer> {
    if (members.empty()) raise(ErrorCode::InvalidArgument, "sup of an empty family");
    Rat best;
    bool have = false;
    for (const Observer& m : members) {
      ScaleMembership match = match_scale_member(family, m);
      if (!match.member)
        raise(ErrorCode::NotInUniverse, "sup over a non-member of the scale family");
      if (!have || *match.witness > best) {
        best = *match.witness;
        have = true;
      }
    }
    return {scale(best, family.base)};
  };
  return ctx;
}

namespace {

// Exact minimum set cover by branch and bound: cover every point of
// `universe` using the per-member point sets. Members are referenced by
// index; exploration order is deterministic.
class SetCoverSolver {
 public:
  SetCoverSolver(std::vector<std::vector<std::size_t>> sets, std::vector<std::size_t> universe)
      : sets_(std::move(sets)), universe_(std::move(universe)) {}

  std::vector<std::size_t> solve() {
    // Greedy upper bound.
    {
      std::vector<std::size_t> uncovered = universe_;
      std::vector<std::size_t> chosen;
      while (!uncovered.empty()) {
        std::size_t best = sets_.size();
        std::size_t best_gain = 0;
        for (std::size_t i = 0; i < sets_.size(); ++i) {
          const std::size_t gain = intersection_size(sets_[i], uncovered);
          if (gain > best_gain) {
            best_gain = gain;
            best = i;
          }
        }
        if (best == sets_.size()) return {};  // uncoverable
        chosen.push_back(best);
        uncovered = difference(uncovered, sets_[best]);
      }
      best_ = chosen;
    }
    std::vector<std::size_t> chosen;
    branch(universe_, chosen);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  static std::size_t intersection_size(const std::vector<std::size_t>& a,
                                       const std::vector<std::size_t>& b) {
    std::size_t n = 0;
    for (std::size_t x : b)
      if (std::binary_search(a.begin(), a.end(), x)) ++n;
    return n;
  }
  static std::vector<std::size_t> difference(const std::vector<std::size_t>& a,
                                             const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    for (std::size_t x : a)
      if (!std::binary_search(b.begin(), b.end(), x)) out.push_back(x);
    return out;
  }

  void branch(const std::vector<std::size_t>& uncovered, std::vector<std::size_t>& chosen) {
    if (uncovered.empty()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + 1 >= best_.size()) return;  // cannot improve
    // Lower bound: the largest set covers at most max_gain points per pick.
    std::size_t max_gain = 0;
    for (const auto& s : sets_) max_gain = std::max(max_gain, intersection_size(s, uncovered));
    if (max_gain == 0) return;
    const std::size_t lower = (uncovered.size() + max_gain - 1) / max_gain;
    if (chosen.size() + lower >= best_.size()) return;

    // Branch on the point with the fewest candidate sets.
    std::size_t pivot = uncovered.front();
    std::size_t pivot_options = sets_.size() + 1;
    for (std::size_t p : uncovered) {
      std::size_t options = 0;
      for (const auto& s : sets_)
        if (std::binary_search(s.begin(), s.end(), p)) ++options;
      if (options < pivot_options) {
        pivot_options = options;
        pivot = p;
      }
    }
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (!std::binary_search(sets_[i].begin(), sets_[i].end(), pivot)) continue;
      chosen.push_back(i);
      branch(difference(uncovered, sets_[i]), chosen);
      chosen.pop_back();
    }
  }

  std::vector<std::vector<std::size_t>> sets_;
  std::vector<std::size_t> universe_;
  std::vector<std::size_t> best_;
};

}  // namespace

CoverContext<Observer> cover_context(const TwoLevelTopology& t) {
  CoverContext<Observer> ctx;
  ctx.meet = [](const Observer& a, const Observer& b) { return meet(a, b); };
  ctx.join = [](const Observer& a, const Observer& b) { return join(a, b); };
  ctx.designated = t.designated;
  const TwoLevelFamily family = t.family;
  ctx.open_member = [family](const Observer& obs) { return family.contains(obs); };
  ctx.sup_of = [family](const std::vector<Observer>& members) -> std::vector<Observer> {
    if (members.empty()) raise(ErrorCode::InvalidArgument, "sup of an empty family");
    std::vector<std::size_t> common;
    bool first = true;
    for (const Observer& m : members) {
      auto inside = family.inside_set(m);
      if (!inside)
        raise(ErrorCode::NotInUniverse, "sup over a non-member of the two-level family");
      if (first) {
        common = *inside;
        first = false;
      } else {
        std::vector<std::size_t> next;
        std::set_intersection(common.begin(), common.end(), inside->begin(), inside->end(),
                              std::back_inserter(next));
        common = std::move(next);
      }
    }
    return {family.member_for(common)};
  };
  // Minimal subcovers reduce to exact set cover: a subset covers obs_T
  // exactly when the chosen inside sets intersect down to T, i.e. when every
  // surplus point is missed by some chosen member.
  ctx.min_cover_hook = [family](const std::vector<Observer>& members, const Observer& target)
      -> std::optional<std::vector<std::size_t>> {
    auto target_inside = family.inside_set(target);
    if (!target_inside) return std::nullopt;
    std::vector<std::size_t> eligible;  // members whose inside set contains the target's
    std::vector<std::vector<std::size_t>> surplus;  // inside points beyond the target's
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto inside = family.inside_set(members[i]);
      if (!inside) return std::nullopt;
      if (!std::includes(inside->begin(), inside->end(), target_inside->begin(),
                         target_inside->end()))
        continue;
      std::vector<std::size_t> extra;
      std::set_difference(inside->begin(), inside->end(), target_inside->begin(),
                          target_inside->end(), std::back_inserter(extra));
      eligible.push_back(i);
      surplus.push_back(std::move(extra));
    }
    if (eligible.empty()) return std::nullopt;
    std::vector<std::size_t> pool;  // every surplus point that could survive
    for (const auto& s : surplus) pool.insert(pool.end(), s.begin(), s.end());
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::vector<std::vector<std::size_t>> misses(eligible.size());
    for (std::size_t i = 0; i < eligible.size(); ++i)
      for (std::size_t p : pool)
        if (!std::binary_search(surplus[i].begin(), surplus[i].end(), p))
          misses[i].push_back(p);
    SetCoverSolver solver(misses, pool);
    std::vector<std::size_t> picked = solver.solve();
    if (picked.empty() && !pool.empty()) return std::nullopt;  // no selection works
    std::vector<std::size_t> out;
    for (std::size_t i : picked) out.push_back(eligible[i]);
    if (out.empty()) out.push_back(eligible.front());
    std::sort(out.begin(), out.end());
    return out;
  };
  return ctx;
}

Cover<Observer> cover_pullback(const Cover<Observer>& cover, const PointMap& f,
                               const CoverContext<Observer>& source_ctx) {
  std::vector<Observer> members;
  members.reserve(cover.members.size());
  for (const Observer& m : cover.members) members.push_back(compose(m, f));
  Observer target = compose(cover.target, f);
  Cover<Observer> pulled = make_cover(target, members, source_ctx);
  Observer predicted = compose(cover.witness, f);
  auto it = std::find(pulled.witnesses.begin(), pulled.witnesses.end(), predicted);
  if (it != pulled.witnesses.end()) pulled.witness = predicted;
  return pulled;
}

CompactnessReport compactness_check(const Observer& target, const ScaleTopology& t) {
  CompactnessReport report;
  report.eligible = dominated_by(target, t.designated);
  if (!report.eligible) {
    report.reasoning = "target is not absorbed by the designated element";
    return report;
  }
  ScaleMembership match = match_scale_member(t.family, target);
  if (!match.member) {
    // A witness is always a family member, so a non-member target has no
    // cover at all.
    report.compact = false;
    report.reasoning = "no subfamily sup-set can equal a target outside the family";
    return report;
  }
  const Rat& r = *match.witness;
  if (t.family.lo == t.family.hi || r == t.family.lo) {
    report.compact = true;
    report.reasoning = "the only subfamilies reaching scale " + rational_to_string(r) +
                       " already contain the member itself";
  } else {
    report.compact = false;
    report.reasoning =
        "the subfamily of every scale strictly below " + rational_to_string(r) +
        " covers the member (its scale supremum is " + rational_to_string(r) +
        ") yet every finite subset tops out at a strictly smaller scale";
  }
  return report;
}

CompactnessReport compactness_check(const Observer& target, const TwoLevelTopology& t) {
  CompactnessReport report;
  report.eligible = dominated_by(target, t.designated);
  if (!report.eligible) {
    report.reasoning = "target is not absorbed by the designated element";
    return report;
  }
  auto inside = t.family.inside_set(target);
  if (!inside) {
    report.compact = false;
    report.reasoning = "no subfamily sup-set can equal a target outside the family";
    return report;
  }
  report.compact = true;
  report.reasoning =
      "the family is finite: the singleton cover works and every cover is already finite";
  return report;
}

CompactPullbackReport compact_pullback_check(const Observer& d, const PointMap& f,
                                             const Topology<Observer>& yside,
                                             const Topology<Observer>& xside) {
  CompactPullbackReport report;

  // The source universe must be exactly the pullback of the destination one.
  std::vector<Observer> pulled;
  for (const Observer& e : xside.universe.elements) pulled.push_back(compose(e, f));
  report.observer_injective = true;
  for (std::size_t i = 0; i < pulled.size() && report.observer_injective; ++i)
    for (std::size_t j = i + 1; j < pulled.size(); ++j)
      if (pulled[i] == pulled[j] &&
          !(xside.universe.elements[i] == xside.universe.elements[j])) {
        report.observer_injective = false;
        report.detail = "two distinct elements pull back to the same observer";
        break;
      }
  report.family_matches = true;
  for (const Observer& p : pulled)
    if (!yside.universe.contains(p)) {
      report.family_matches = false;
      report.detail = "a pullback is missing from the source universe";
      break;
    }
  if (report.family_matches)
    for (const Observer& e : yside.universe.elements)
      if (std::find(pulled.begin(), pulled.end(), e) == pulled.end()) {
        report.family_matches = false;
        report.detail = "the source universe carries an element that is not a pullback";
        break;
      }
  if (!report.observer_injective || !report.family_matches)
    raise(ErrorCode::HypothesisNotMet, report.detail);

  report.source_compact = compactness_check(compose(d, f), yside).compact;
  report.target_compact = compactness_check(d, xside).compact;
  report.transfer_holds = !report.source_compact || report.target_compact;
  if (!report.transfer_holds)
    raise(ErrorCode::TheoremViolation,
          "pulled-back element is compact but the element itself is not");
  return report;
}

}  // namespace infotop
