#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "infotop/algebra.hpp"
#include "infotop/error.hpp"

namespace infotop {

// A designated-system topology over a finite universe: `designated` plays
// the role the definitions call F, `least` the role of O, and `opens` the
// open family. All three live in the universe's element list.
template <class E>
struct Topology {
  AlgebraUniverse<E> universe;
  E designated;
  E least;
  std::vector<E> opens;

  bool is_open_member(const E& h) const {
    return std::find(opens.begin(), opens.end(), h) != opens.end();
  }
};

struct CheckLine {
  std::string name;
  AxiomStatus status = AxiomStatus::Holds;
  std::string detail;

  bool holds() const { return status != AxiomStatus::Fails; }
};

struct TopologyReport {
  std::vector<CheckLine> checks;
  bool subsets_exhaustive = true;
  std::uint64_t subsets_checked = 0;

  bool valid() const {
    for (const auto& c : checks)
      if (!c.holds()) return false;
    return true;
  }
  std::optional<CheckLine> first_violation() const {
    for (const auto& c : checks)
      if (!c.holds()) return c;
    return std::nullopt;
  }
};

struct ValidateOptions {
  std::size_t subset_exhaustive_cap = 12;  // opens count above which subsets are sampled
  std::uint64_t subset_samples = 512;
  std::uint64_t seed = 0;
  bool allow_sampling = true;
};

// Checks the four defining properties of an open family: every open sits
// below the designated element, the designated and a least element are
// present, pairwise meets stay open, and every non-empty subset of opens has
// a non-empty sup-set contained in the opens. Subset enumeration is
// exhaustive up to the cap and seeded-random beyond it.
template <class E>
TopologyReport validate_topology(const Topology<E>& t,
                                 const ValidateOptions& options = {}) {
  TopologyReport report;
  const auto& u = t.universe;

  CheckLine membership{"opens-in-universe", AxiomStatus::Holds, ""};
  for (const E& g : t.opens)
    if (!u.contains(g)) {
      membership.status = AxiomStatus::Fails;
      membership.detail = "an open is missing from the universe element list";
      break;
    }
  report.checks.push_back(membership);
  if (!membership.holds()) return report;

  CheckLine below{"opens-below-designated", AxiomStatus::Holds, ""};
  for (const E& g : t.opens)
    if (!(u.meet(g, t.designated) == g)) {
      below.status = AxiomStatus::Fails;
      below.detail = "an open is not absorbed by the designated element";
      break;
    }
  report.checks.push_back(below);

  CheckLine designated_open{"designated-open", AxiomStatus::Holds, ""};
  if (!t.is_open_member(t.designated)) {
    designated_open.status = AxiomStatus::Fails;
    designated_open.detail = "designated element is not listed as open";
  }
  report.checks.push_back(designated_open);

  CheckLine least_open{"least-element", AxiomStatus::Holds, ""};
  if (!t.is_open_member(t.least)) {
    least_open.status = AxiomStatus::Fails;
    least_open.detail = "least element is not listed as open";
  } else {
    for (const E& g : t.opens)
      if (!(u.meet(t.least, g) == t.least)) {
        least_open.status = AxiomStatus::Fails;
        least_open.detail = "stored least element is not absorbed by every open";
        break;
      }
  }
  report.checks.push_back(least_open);

  CheckLine meet_closed{"meet-closed", AxiomStatus::Holds, ""};
  for (const E& g : t.opens) {
    for (const E& h : t.opens)
      if (!t.is_open_member(u.meet(g, h))) {
        meet_closed.status = AxiomStatus::Fails;
        meet_closed.detail = "meet of two opens left the open family";
        break;
      }
    if (!meet_closed.holds()) break;
  }
  report.checks.push_back(meet_closed);

  CheckLine sup_closed{"sup-closed", AxiomStatus::Holds, ""};
  const std::size_t n = t.opens.size();
  auto check_subset = [&](const std::vector<E>& subset) {
    std::vector<E> sups = sup_set(subset, u);
    if (sups.empty()) {
      sup_closed.status = AxiomStatus::Fails;
      sup_closed.detail = "a subset of opens has an empty sup-set";
      return false;
    }
    for (const E& s : sups)
      if (!t.is_open_member(s)) {
        sup_closed.status = AxiomStatus::Fails;
        sup_closed.detail = "a sup-set member escapes the open family";
        return false;
      }
    return true;
  };
  if (n <= options.subset_exhaustive_cap) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
      std::vector<E> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::uint64_t(1) << i)) subset.push_back(t.opens[i]);
      ++report.subsets_checked;
      if (!check_subset(subset)) break;
    }
  } else {
    if (!options.allow_sampling)
      raise(ErrorCode::BudgetExceeded,
            "open family too large for exhaustive subsets and sampling is disabled");
    report.subsets_exhaustive = false;
    sup_closed.status = AxiomStatus::HoldsSampled;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::uint64_t s = 0; s < options.subset_samples; ++s) {
      std::vector<E> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (coin(rng)) subset.push_back(t.opens[i]);
      if (subset.empty()) subset.push_back(t.opens[pick(rng)]);
      ++report.subsets_checked;
      if (!check_subset(subset)) break;
    }
  }
  report.checks.push_back(sup_closed);
  return report;
}

// Interior of h: the sup-set of every open absorbed by h. Errors out when no
// open sits below h at all.
template <class E>
std::vector<E> interior_of(const E& h, const Topology<E>& t) {
  std::vector<E> below;
  for (const E& g : t.opens)
    if (t.universe.meet(g, h) == g) below.push_back(g);
  if (below.empty())
    raise(ErrorCode::EmptyInteriorFamily, "no open is absorbed by the element");
  return sup_set(below, t.universe);
}

template <class E>
struct OpennessCertificate {
  bool open = false;
  bool in_interior = false;
  std::vector<E> interior;
};

// Openness by membership, cross-checked against membership in the element's
// own interior. A disagreement means the data does not satisfy the structure
// the check relies on, and is surfaced as a hard error.
template <class E>
OpennessCertificate<E> is_open(const E& h, const Topology<E>& t) {
  OpennessCertificate<E> cert;
  cert.open = t.is_open_member(h);
  try {
    cert.interior = interior_of(h, t);
    cert.in_interior =
        std::find(cert.interior.begin(), cert.interior.end(), h) != cert.interior.end();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyInteriorFamily) throw;
    cert.in_interior = false;
  }
  if (cert.open != cert.in_interior)
    raise(ErrorCode::TheoremViolation,
          "openness and interior membership disagree; the universe does not "
          "satisfy the expected structure");
  return cert;
}

// The unique element g' with g' = g' ∧ F, g ∨ g' = g' ∨ g = F and
// g ∧ g' = g' ∧ g = O, found by scanning the universe. Non-uniqueness is
// reported, never silently resolved.
template <class E>
E complement_of(const E& g, const Topology<E>& t) {
  const auto& u = t.universe;
  if (!(u.meet(g, t.designated) == g))
    raise(ErrorCode::InvalidArgument,
          "complement requested for an element not absorbed by the designated one");
  std::vector<E> found;
  for (const E& s : u.elements) {
    if (!(u.meet(s, t.designated) == s)) continue;
    if (!(u.join(g, s) == t.designated) || !(u.join(s, g) == t.designated)) continue;
    if (!(u.meet(g, s) == t.least) || !(u.meet(s, g) == t.least)) continue;
    found.push_back(s);
  }
  if (found.empty()) raise(ErrorCode::NoComplement, "no complement in the universe");
  if (found.size() > 1)
    raise(ErrorCode::NonUniqueComplement,
          std::to_string(found.size()) + " complements found");
  return found.front();
}

template <class E>
bool is_closed(const E& h, const Topology<E>& t) {
  if (!(t.universe.meet(h, t.designated) == h)) return false;
  return t.is_open_member(complement_of(h, t));
}

enum class ClosedMeetOutcome {
  Verified,            // hypotheses hold, meet is closed with the expected complement
  FirstHypothesisFails,   // (A ∧ B) ∧ A' differs from the least element
  SecondHypothesisFails,  // B ∨ A' ∨ B' differs from the designated element
  InputNotClosed,
};

template <class E>
struct ClosedMeetReport {
  ClosedMeetOutcome outcome;
  std::string detail;
  std::optional<E> meet_complement;
};

// For closed a, b: evaluates the two side conditions under which a ∧ b is
// again closed with complement a' ∨ b', and verifies that conclusion when
// they hold.
template <class E>
ClosedMeetReport<E> closed_meet_check(const E& a, const E& b, const Topology<E>& t) {
  const auto& u = t.universe;
  ClosedMeetReport<E> report{ClosedMeetOutcome::Verified, "", std::nullopt};
  if (!is_closed(a, t) || !is_closed(b, t)) {
    report.outcome = ClosedMeetOutcome::InputNotClosed;
    report.detail = "an input element is not closed";
    return report;
  }
  const E a_comp = complement_of(a, t);
  const E b_comp = complement_of(b, t);
  const E ab = u.meet(a, b);
  if (!(u.meet(ab, a_comp) == t.least)) {
    report.outcome = ClosedMeetOutcome::FirstHypothesisFails;
    report.detail = "(a ∧ b) ∧ a' is not the least element";
    return report;
  }
  if (!(u.join(u.join(b, a_comp), b_comp) == t.designated)) {
    report.outcome = ClosedMeetOutcome::SecondHypothesisFails;
    report.detail = "b ∨ a' ∨ b' is not the designated element";
    return report;
  }
  const E expected = u.join(a_comp, b_comp);
  if (!is_closed(ab, t))
    raise(ErrorCode::TheoremViolation, "hypotheses hold but the meet is not closed");
  if (!(complement_of(ab, t) == expected))
    raise(ErrorCode::TheoremViolation,
          "hypotheses hold but the meet's complement is not a' ∨ b'");
  report.meet_complement = expected;
  return report;
}

}  // namespace infotop
