#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "infotop/error.hpp"

namespace infotop {

// A finite, explicitly listed carrier set with two binary operations.
// Element equality is structural (operator==); nothing assumes the
// operations are commutative, and every check evaluates operands in the
// exact order the definitions state.
enum class ClosureMode { Closed, OpenWorld };

template <class E>
struct AlgebraUniverse {
  std::vector<E> elements;
  std::function<E(const E&, const E&)> join;
  std::function<E(const E&, const E&)> meet;
  ClosureMode closure_mode = ClosureMode::OpenWorld;

  bool contains(const E& value) const {
    return std::find(elements.begin(), elements.end(), value) != elements.end();
  }

  std::size_t size() const { return elements.size(); }
};

enum class AxiomStatus { Holds, HoldsSampled, Fails };

template <class E>
struct AxiomCounterexample {
  E a, b, c;
  std::string clause;  // which equality broke, e.g. "join-associativity"
};

template <class E>
struct AxiomVerdict {
  std::string name;
  AxiomStatus status = AxiomStatus::Holds;
  std::optional<AxiomCounterexample<E>> counterexample;

  bool holds() const { return status != AxiomStatus::Fails; }
};

// Verdicts for the five defining identities plus meet-commutativity, which
// the entropy layer needs as a standing assumption.
template <class E>
struct AxiomReport {
  AxiomVerdict<E> join_meet_associativity;   // (i)
  AxiomVerdict<E> absorption;                // (ii)
  AxiomVerdict<E> idempotence;               // (iii)
  AxiomVerdict<E> meet_over_join;            // (iv)
  AxiomVerdict<E> join_over_meet;            // (v)
  AxiomVerdict<E> meet_commutativity;        // extra, not one of (i)-(v)
  bool exhaustive = false;
  std::uint64_t triples_checked = 0;
  std::uint64_t seed = 0;

  bool all_hold() const {
    return join_meet_associativity.holds() && absorption.holds() &&
           idempotence.holds() && meet_over_join.holds() && join_over_meet.holds();
  }

  std::vector<const AxiomVerdict<E>*> verdicts() const {
    return {&join_meet_associativity, &absorption, &idempotence,
            &meet_over_join, &join_over_meet, &meet_commutativity};
  }
};

namespace detail {

template <class E>
E checked_op(const AlgebraUniverse<E>& u,
             const std::function<E(const E&, const E&)>& op, const E& a,
             const E& b, const char* op_name) {
  E r = op(a, b);
  if (u.closure_mode == ClosureMode::Closed && !u.contains(r))
    raise(ErrorCode::ClosureViolation,
          std::string(op_name) + " of two members left the element list");
  return r;
}

template <class E>
struct TripleChecker {
  const AlgebraUniverse<E>& u;

  E jn(const E& a, const E& b) const { return checked_op(u, u.join, a, b, "join"); }
  E mt(const E& a, const E& b) const { return checked_op(u, u.meet, a, b, "meet"); }

  // Returns the violated clause name, or nullptr if the triple passes.
  const char* associativity(const E& a, const E& b, const E& c) const {
    if (!(jn(a, jn(b, c)) == jn(jn(a, b), c))) return "join-associativity";
    if (!(mt(a, mt(b, c)) == mt(mt(a, b), c))) return "meet-associativity";
    return nullptr;
  }
  const char* absorption(const E& a, const E& b, const E&) const {
    if (!(jn(a, mt(a, b)) == a)) return "join-absorbs-meet";
    if (!(mt(a, jn(b, a)) == a)) return "meet-absorbs-join";
    return nullptr;
  }
  const char* idempotence(const E& a, const E&, const E&) const {
    if (!(jn(a, a) == a)) return "join-idempotence";
    if (!(mt(a, a) == a)) return "meet-idempotence";
    return nullptr;
  }
  const char* meet_over_join(const E& a, const E& b, const E& c) const {
    if (!(mt(a, jn(b, c)) == jn(mt(a, b), mt(a, c)))) return "meet-over-join-left";
    if (!(mt(jn(b, c), a) == jn(mt(b, a), mt(c, a)))) return "meet-over-join-right";
    return nullptr;
  }
  const char* join_over_meet(const E& a, const E& b, const E& c) const {
    if (!(jn(a, mt(b, c)) == mt(jn(a, b), jn(a, c)))) return "join-over-meet-left";
    if (!(jn(mt(b, c), a) == mt(jn(b, a), jn(c, a)))) return "join-over-meet-right";
    return nullptr;
  }
  const char* commutativity(const E& a, const E& b, const E&) const {
    if (!(mt(a, b) == mt(b, a))) return "meet-commutativity";
    return nullptr;
  }
};

}  // namespace detail

// Checks the five defining identities (and meet-commutativity) over all
// ordered triples when |elements|^3 fits in the budget, otherwise over
// `sample_budget` seeded random triples. The report says which mode ran.
template <class E>
AxiomReport<E> check_axioms(const AlgebraUniverse<E>& universe,
                            std::uint64_t sample_budget = 200000,
                            std::uint64_t seed = 0) {
  if (universe.elements.empty())
    raise(ErrorCode::InvalidArgument, "axiom check on an empty universe");
  if (sample_budget < 1)
    raise(ErrorCode::InvalidArgument, "sample budget must be at least 1");

  AxiomReport<E> report;
  report.seed = seed;
  report.join_meet_associativity.name = "associativity";
  report.absorption.name = "absorption";
  report.idempotence.name = "idempotence";
  report.meet_over_join.name = "meet-over-join distributivity";
  report.join_over_meet.name = "join-over-meet distributivity";
  report.meet_commutativity.name = "meet commutativity";

  const std::size_t n = universe.elements.size();
  const bool exhaustive =
      static_cast<std::uint64_t>(n) * n * n <= sample_budget;
  report.exhaustive = exhaustive;

  detail::TripleChecker<E> chk{universe};
  using Method = const char* (detail::TripleChecker<E>::*)(const E&, const E&,
                                                           const E&) const;
  struct Slot {
    Method method;
    AxiomVerdict<E>* verdict;
  };
  Slot slots[] = {
      {&detail::TripleChecker<E>::associativity, &report.join_meet_associativity},
      {&detail::TripleChecker<E>::absorption, &report.absorption},
      {&detail::TripleChecker<E>::idempotence, &report.idempotence},
      {&detail::TripleChecker<E>::meet_over_join, &report.meet_over_join},
      {&detail::TripleChecker<E>::join_over_meet, &report.join_over_meet},
      {&detail::TripleChecker<E>::commutativity, &report.meet_commutativity},
  };

  auto run_triple = [&](const E& a, const E& b, const E& c) {
    for (auto& slot : slots) {
      if (slot.verdict->status == AxiomStatus::Fails) continue;
      const char* clause = (chk.*slot.method)(a, b, c);
      if (clause) {
        slot.verdict->status = AxiomStatus::Fails;
        slot.verdict->counterexample = AxiomCounterexample<E>{a, b, c, clause};
      }
    }
    ++report.triples_checked;
  };

  if (exhaustive) {
    for (const E& a : universe.elements)
      for (const E& b : universe.elements)
        for (const E& c : universe.elements) run_triple(a, b, c);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::uint64_t i = 0; i < sample_budget; ++i)
      run_triple(universe.elements[pick(rng)], universe.elements[pick(rng)],
                 universe.elements[pick(rng)]);
    for (auto& slot : slots)
      if (slot.verdict->status == AxiomStatus::Holds)
        slot.verdict->status = AxiomStatus::HoldsSampled;
  }
  return report;
}

// The sup-set of a family: every S in the universe that dominates each
// family member (G = G ∧ S, family member on the left) and is minimal among
// dominators (S = S ∧ H for every dominator H). May be empty; may contain
// several elements when the meet is not commutative.
template <class E>
std::vector<E> sup_set(const std::vector<E>& family,
                       const AlgebraUniverse<E>& universe) {
  if (family.empty())
    raise(ErrorCode::InvalidArgument, "sup_set of an empty family");
  for (const E& g : family)
    if (!universe.contains(g))
      raise(ErrorCode::NotInUniverse, "family member is not in the element list");

  std::vector<E> dominators;
  for (const E& s : universe.elements) {
    bool all = true;
    for (const E& g : family)
      if (!(universe.meet(g, s) == g)) {
        all = false;
        break;
      }
    if (all) dominators.push_back(s);
  }
  std::vector<E> result;
  for (const E& s : dominators) {
    bool minimal = true;
    for (const E& h : dominators)
      if (!(universe.meet(s, h) == s)) {
        minimal = false;
        break;
      }
    if (minimal) result.push_back(s);
  }
  return result;
}

// Smallest superset of `seed` closed under both operations, by fixpoint
// iteration. Order of the result: seed first, then discovered elements in
// deterministic discovery order.
template <class E>
std::vector<E> meet_join_closure(const std::vector<E>& seed,
                                 const AlgebraUniverse<E>& universe,
                                 std::size_t element_cap = 100000) {
  if (universe.closure_mode == ClosureMode::Closed)
    for (const E& s : seed)
      if (!universe.contains(s))
        raise(ErrorCode::NotInUniverse, "closure seed is not in the element list");

  std::vector<E> result;
  std::set<E> seen;
  for (const E& s : seed)
    if (seen.insert(s).second) result.push_back(s);

  std::size_t frontier_start = 0;
  while (frontier_start < result.size()) {
    const std::size_t end = result.size();
    for (std::size_t i = frontier_start; i < end; ++i) {
      for (std::size_t j = 0; j < end; ++j) {
        for (const E& candidate :
             {universe.join(result[i], result[j]), universe.join(result[j], result[i]),
              universe.meet(result[i], result[j]), universe.meet(result[j], result[i])}) {
          if (seen.insert(candidate).second) {
            result.push_back(candidate);
            if (result.size() > element_cap)
              raise(ErrorCode::BudgetExceeded,
                    "closure exceeded the element cap of " +
                        std::to_string(element_cap));
          }
        }
      }
    }
    frontier_start = end;
  }
  return result;
}

// Convenience: a universe whose element list is the closure of the seed,
// inheriting the operations.
template <class E>
AlgebraUniverse<E> closed_universe_from_seed(const std::vector<E>& seed,
                                             const AlgebraUniverse<E>& ops,
                                             std::size_t element_cap = 100000) {
  AlgebraUniverse<E> closed;
  closed.join = ops.join;
  closed.meet = ops.meet;
  closed.closure_mode = ClosureMode::Closed;
  AlgebraUniverse<E> open = ops;
  open.closure_mode = ClosureMode::OpenWorld;
  closed.elements = meet_join_closure(seed, open, element_cap);
  return closed;
}

}  // namespace infotop
