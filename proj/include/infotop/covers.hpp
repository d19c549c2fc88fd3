#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "infotop/error.hpp"
#include "infotop/spaces.hpp"
#include "infotop/topology.hpp"

namespace infotop {

// Everything the cover machinery needs from a topology backend: the two
// operations, the designated element, sup-sets of explicit member lists,
// and open-family membership. Finite topologies and the two symbolic family
// backends all reduce to this interface.
template <class E>
struct CoverContext {
  std::function<E(const E&, const E&)> meet;
  std::function<E(const E&, const E&)> join;
  E designated;
  std::function<std::vector<E>(const std::vector<E>&)> sup_of;
  std::function<bool(const E&)> open_member;
  // Structured backends may provide an exact minimal-subcover solver;
  // when absent the generic ascending-cardinality search runs.
  std::function<std::optional<std::vector<std::size_t>>(const std::vector<E>&, const E&)>
      min_cover_hook;
};

template <class E>
CoverContext<E> cover_context(const Topology<E>& t) {
  auto topo = std::make_shared<const Topology<E>>(t);  // keeps the backend alive
  CoverContext<E> ctx;
  ctx.meet = topo->universe.meet;
  ctx.join = topo->universe.join;
  ctx.designated = topo->designated;
  ctx.sup_of = [topo](const std::vector<E>& members) {
    return sup_set(members, topo->universe);
  };
  ctx.open_member = [topo](const E& e) { return topo->is_open_member(e); };
  return ctx;
}

CoverContext<Observer> cover_context(const ScaleTopology& t);
CoverContext<Observer> cover_context(const TwoLevelTopology& t);

template <class E>
struct Cover {
  E target;
  std::vector<E> members;  // sorted, deduplicated
  E witness;               // a sup-set member with meet(witness, designated) == target
  std::vector<E> witnesses;
};

namespace detail {

template <class E>
std::vector<E> sorted_dedup(std::vector<E> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

template <class E>
std::vector<E> cover_witnesses(const std::vector<E>& members, const E& target,
                               const CoverContext<E>& ctx) {
  std::vector<E> witnesses;
  for (const E& s : ctx.sup_of(members))
    if (ctx.meet(s, ctx.designated) == target) witnesses.push_back(s);
  return witnesses;
}

}  // namespace detail

// Builds a cover of `target` from opens, recording every witness found in
// the member list's sup-set.
template <class E>
Cover<E> make_cover(const E& target, const std::vector<E>& members,
                    const CoverContext<E>& ctx, bool check_openness = true) {
  if (members.empty()) raise(ErrorCode::InvalidArgument, "cover with no members");
  std::vector<E> sorted = detail::sorted_dedup(members);
  if (check_openness)
    for (const E& m : sorted)
      if (!ctx.open_member(m))
        raise(ErrorCode::InvalidArgument, "cover member is not an open");
  std::vector<E> witnesses = detail::cover_witnesses(sorted, target, ctx);
  if (witnesses.empty())
    raise(ErrorCode::NotACover,
          "no sup-set member meets the designated element to the target");
  Cover<E> cover;
  cover.target = target;
  cover.members = std::move(sorted);
  cover.witness = witnesses.front();
  cover.witnesses = std::move(witnesses);
  return cover;
}

template <class E>
bool subset_covers(const std::vector<E>& members, const E& target,
                   const CoverContext<E>& ctx) {
  if (members.empty()) return false;
  return !detail::cover_witnesses(members, target, ctx).empty();
}

struct MinSubcoverResult {
  std::uint64_t count = 0;
  std::vector<std::size_t> member_indices;
  bool exhaustive = true;  // search enumerated every smaller cardinality
};

// Smallest-cardinality subset of the cover's members that still covers the
// target. A greedy shrink provides the upper bound; cardinalities below it
// are enumerated exhaustively, so the result never relies on covering being
// monotone under member supersets.
template <class E>
MinSubcoverResult min_subcover(const Cover<E>& cover, const CoverContext<E>& ctx,
                               std::uint64_t oracle_call_cap = 6000000) {
  const std::vector<E>& members = cover.members;
  const std::size_t n = members.size();

  if (ctx.min_cover_hook) {
    if (auto solved = ctx.min_cover_hook(members, cover.target)) {
      MinSubcoverResult result;
      result.member_indices = *solved;
      result.count = solved->size();
      return result;
    }
  }

  // Greedy shrink from the full member set.
  std::vector<std::size_t> current(n);
  for (std::size_t i = 0; i < n; ++i) current[i] = i;
  for (std::size_t drop = n; drop-- > 0;) {
    std::vector<std::size_t> trial;
    for (std::size_t i : current)
      if (i != drop) trial.push_back(i);
    if (trial.empty()) continue;
    std::vector<E> subset;
    for (std::size_t i : trial) subset.push_back(members[i]);
    if (subset_covers(subset, cover.target, ctx)) current = std::move(trial);
  }

  MinSubcoverResult result;
  result.member_indices = current;
  result.count = current.size();

  std::uint64_t calls = 0;
  for (std::size_t c = 1; c < current.size(); ++c) {
    // Lexicographic combinations of size c.
    std::vector<std::size_t> combo(c);
    for (std::size_t i = 0; i < c; ++i) combo[i] = i;
    bool found = false;
    while (true) {
      if (++calls > oracle_call_cap)
        raise(ErrorCode::BudgetExceeded, "minimal-subcover search exceeded the call cap");
      std::vector<E> subset;
      for (std::size_t i : combo) subset.push_back(members[i]);
      if (subset_covers(subset, cover.target, ctx)) {
        result.member_indices = combo;
        result.count = c;
        found = true;
        break;
      }
      // advance combination
      std::size_t k = c;
      while (k > 0 && combo[k - 1] == n - c + (k - 1)) --k;
      if (k == 0) break;
      ++combo[k - 1];
      for (std::size_t j = k; j < c; ++j) combo[j] = combo[j - 1] + 1;
    }
    if (found) break;
  }
  return result;
}

struct CoverEntropy {
  std::uint64_t count = 0;
  double log_count = 0.0;
};

template <class E>
CoverEntropy cover_entropy(const Cover<E>& cover, const CoverContext<E>& ctx) {
  MinSubcoverResult min = min_subcover(cover, ctx);
  return {min.count, std::log(static_cast<double>(min.count))};
}

namespace detail {

template <class E>
void require_meet_commutative(const std::vector<E>& a, const std::vector<E>& b,
                              const CoverContext<E>& ctx) {
  for (const E& x : a)
    for (const E& y : b)
      if (!(ctx.meet(x, y) == ctx.meet(y, x)))
        raise(ErrorCode::NonCommutativeMeet,
              "cover combination requires a commutative meet");
}

// Rebuilds the cover from combined members; prefers the witness the
// combination rule predicts when the sup-set confirms it.
template <class E>
Cover<E> finish_combined(const E& target, std::vector<E> members, const E& predicted,
                         const CoverContext<E>& ctx) {
  Cover<E> cover = make_cover(target, std::move(members), ctx);
  auto it = std::find(cover.witnesses.begin(), cover.witnesses.end(), predicted);
  if (it != cover.witnesses.end()) cover.witness = predicted;
  return cover;
}

}  // namespace detail

// Pairwise meets of members, one from each cover; the combined witness is
// the meet of the two witnesses.
template <class E>
Cover<E> cover_join(const Cover<E>& a, const Cover<E>& b, const CoverContext<E>& ctx) {
  if (!(a.target == b.target))
    raise(ErrorCode::TargetMismatch, "cover join of covers with different targets");
  detail::require_meet_commutative(a.members, b.members, ctx);
  std::vector<E> members;
  members.reserve(a.members.size() * b.members.size());
  for (const E& e : a.members)
    for (const E& g : b.members) members.push_back(ctx.meet(e, g));
  return detail::finish_combined(a.target, std::move(members),
                                 ctx.meet(a.witness, b.witness), ctx);
}

// Pairwise meets with both operands ranging over the union of the member
// lists; the combined witness is the join of the two witnesses.
template <class E>
Cover<E> cover_union_refine(const Cover<E>& a, const Cover<E>& b,
                            const CoverContext<E>& ctx) {
  if (!(a.target == b.target))
    raise(ErrorCode::TargetMismatch, "cover refinement of covers with different targets");
  std::vector<E> pool = a.members;
  pool.insert(pool.end(), b.members.begin(), b.members.end());
  pool = detail::sorted_dedup(std::move(pool));
  detail::require_meet_commutative(pool, pool, ctx);
  std::vector<E> members;
  for (const E& e : pool)
    for (const E& g : pool) members.push_back(ctx.meet(e, g));
  return detail::finish_combined(a.target, std::move(members),
                                 ctx.join(a.witness, b.witness), ctx);
}

// Member-wise composition with a point map, re-validated in the destination
// context.
Cover<Observer> cover_pullback(const Cover<Observer>& cover, const PointMap& f,
                               const CoverContext<Observer>& source_ctx);

struct CompactnessReport {
  bool eligible = false;  // target is absorbed by the designated element
  bool compact = false;
  std::string reasoning;
  std::vector<std::size_t> certificate_open_indices;  // a cover from the opens, if any
};

// Finite open family: every cover is finite, so compactness reduces to the
// existence of one cover. The search scans universe elements S with
// meet(S, designated) == target and asks whether S is a sup-set member of
// the opens it absorbs.
template <class E>
CompactnessReport compactness_check(const E& target, const Topology<E>& t) {
  CompactnessReport report;
  report.eligible = t.universe.meet(target, t.designated) == target;
  if (!report.eligible) {
    report.reasoning = "target is not absorbed by the designated element";
    return report;
  }
  for (const E& s : t.universe.elements) {
    if (!(t.universe.meet(s, t.designated) == target)) continue;
    std::vector<E> absorbed;
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < t.opens.size(); ++i)
      if (t.universe.meet(t.opens[i], s) == t.opens[i]) {
        absorbed.push_back(t.opens[i]);
        indices.push_back(i);
      }
    if (absorbed.empty()) continue;
    std::vector<E> sups = sup_set(absorbed, t.universe);
    if (std::find(sups.begin(), sups.end(), s) != sups.end()) {
      report.compact = true;
      report.certificate_open_indices = std::move(indices);
      report.reasoning =
          "finite open family: a cover exists and every cover is already finite";
      return report;
    }
  }
  report.reasoning = "no subset of the opens admits a witness for the target";
  return report;
}

// Scale-family backend: a member s*base is compact only when its scale is
// the bottom of the range (or the range is a single point); otherwise the
// strictly increasing subfamily below s covers it with no finite subcover.
CompactnessReport compactness_check(const Observer& target, const ScaleTopology& t);

// Two-level backend: the family is finite, so membership of the target's
// inside set settles compactness.
CompactnessReport compactness_check(const Observer& target, const TwoLevelTopology& t);

struct CompactJoinReport {
  bool hypothesis_holds = false;     // every cover of h ∨ k covers both h and k
  std::string hypothesis_detail;
  bool join_compact = false;
  bool lemma_inclusion_holds = false;  // joins of sup members land in the union's sup-set
  std::string lemma_detail;
  std::uint64_t covers_enumerated = 0;
};

// Enumerates every subset of the opens, classifies which cover h, k and
// h ∨ k, checks the shared-cover hypothesis, and verifies the sup-set
// inclusion for joined witnesses on the same fixture.
template <class E>
CompactJoinReport compact_join_check(const E& h, const E& k, const Topology<E>& t,
                                     std::size_t max_opens = 14) {
  const std::size_t n = t.opens.size();
  if (n > max_opens)
    raise(ErrorCode::BudgetExceeded, "open family too large for cover enumeration");
  CoverContext<E> ctx = cover_context(t);
  const E join_hk = t.universe.join(h, k);

  CompactJoinReport report;
  report.hypothesis_holds = true;
  report.lemma_inclusion_holds = true;

  const std::uint64_t masks = std::uint64_t(1) << n;
  std::vector<std::vector<E>> sups(masks);
  std::vector<std::vector<E>> subsets(masks);
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) subsets[mask].push_back(t.opens[i]);
    sups[mask] = sup_set(subsets[mask], t.universe);
  }

  auto covers_target = [&](std::uint64_t mask, const E& target) {
    for (const E& s : sups[mask])
      if (t.universe.meet(s, t.designated) == target) return true;
    return false;
  };

  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    if (!covers_target(mask, join_hk)) continue;
    ++report.covers_enumerated;
    report.join_compact = true;  // a cover exists; finiteness supplies subcovers
    if (report.hypothesis_holds &&
        (!covers_target(mask, h) || !covers_target(mask, k))) {
      report.hypothesis_holds = false;
      report.hypothesis_detail =
          "a cover of the join fails to cover one of the operands";
    }
  }
  if (!report.join_compact)
    report.hypothesis_detail = "the join admits no cover at all";

  for (std::uint64_t ma = 1; ma < masks && report.lemma_inclusion_holds; ++ma)
    for (std::uint64_t mb = 1; mb < masks && report.lemma_inclusion_holds; ++mb) {
      const std::vector<E>& union_sups = sups[ma | mb];
      for (const E& sa : sups[ma]) {
        for (const E& sb : sups[mb]) {
          E joined = t.universe.join(sa, sb);
          if (std::find(union_sups.begin(), union_sups.end(), joined) ==
              union_sups.end()) {
            report.lemma_inclusion_holds = false;
            report.lemma_detail =
                "a join of sup-set members escapes the union's sup-set";
            break;
          }
        }
        if (!report.lemma_inclusion_holds) break;
      }
    }
  return report;
}

struct CompactPullbackReport {
  bool family_matches = false;       // the source universe is exactly the pullback
  bool observer_injective = false;   // distinct elements pull back to distinct elements
  bool source_compact = false;       // target ∘ f compact on the source side
  bool target_compact = false;       // target compact on the destination side
  bool transfer_holds = false;
  std::string detail;
};

// Verifies the standing hypotheses (pullback-generated universe,
// injectivity on observers) and then confirms on the fixture that
// compactness of the pulled-back element forces compactness of the element
// itself.
CompactPullbackReport compact_pullback_check(const Observer& d, const PointMap& f,
                                             const Topology<Observer>& yside,
                                             const Topology<Observer>& xside);

}  // namespace infotop
