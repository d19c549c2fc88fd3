#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "infotop/covers.hpp"
#include "infotop/rational.hpp"

namespace infotop {

struct TraceRow {
  std::size_t n = 0;
  std::uint64_t count = 0;   // minimal subcover cardinality of the n-fold join
  double log_count = 0.0;    // natural log
  double ratio = 0.0;        // log_count / n
  std::size_t joined_size = 0;
};

struct EntropyTrace {
  std::vector<TraceRow> rows;
  double estimate = 0.0;          // min over computed prefix of log(N_n)/n
  std::size_t estimate_index = 1;  // the n attaining it (exact comparison)
  std::uint64_t estimate_count = 1;
  bool stabilized = false;        // the joined member set stopped changing
  std::size_t stabilized_at = 0;
  bool converged = false;         // stabilized and the prefix minimum is exactly 0
  double last_delta = 0.0;        // a_{n_max} - a_{n_max-1}
};

// Exact comparison of log(a_count)/a_n against log(b_count)/b_n via integer
// powers; returns -1, 0, +1.
int compare_log_ratio(std::uint64_t a_count, std::size_t a_n, std::uint64_t b_count,
                      std::size_t b_n);

namespace detail {

template <class E>
std::vector<E> pulled_members(const std::vector<E>& members,
                              const std::function<E(const E&)>& pull) {
  std::vector<E> out;
  out.reserve(members.size());
  for (const E& m : members) out.push_back(pull(m));
  return sorted_dedup(std::move(out));
}

}  // namespace detail

// The joined-cover entropy sequence a_n = log N(join of the first n
// pullbacks) for n = 1..n_max. The reported estimate is the minimum prefix
// ratio; by subadditivity it upper-bounds the limit the sequence converges
// to. When the joined member set stabilizes the tail of a_n is constant,
// which pins the true limit at zero; the flag records that diagnosis.
template <class E>
EntropyTrace entropy_trace(const std::function<E(const E&)>& pull, const Cover<E>& cover,
                           const CoverContext<E>& ctx, std::size_t n_max,
                           std::size_t size_cap = 20000) {
  if (n_max < 1) raise(ErrorCode::InvalidArgument, "trace needs at least one step");
  if (!(cover.target == ctx.designated))
    raise(ErrorCode::InvalidArgument,
          "entropy traces are defined for covers of the designated element");
  if (!(pull(ctx.designated) == ctx.designated))
    raise(ErrorCode::HypothesisViolation,
          "the designated element is not invariant under the pullback");
  detail::require_meet_commutative(cover.members, cover.members, ctx);

  EntropyTrace trace;
  std::vector<E> joined = cover.members;

  auto push_row = [&](std::size_t n, const std::vector<E>& members) {
    Cover<E> level = make_cover(ctx.designated, members, ctx);
    MinSubcoverResult min = min_subcover(level, ctx);
    TraceRow row;
    row.n = n;
    row.count = min.count;
    row.log_count = std::log(static_cast<double>(min.count));
    row.ratio = row.log_count / static_cast<double>(n);
    row.joined_size = members.size();
    trace.rows.push_back(row);
  };

  push_row(1, joined);
  for (std::size_t n = 2; n <= n_max; ++n) {
    if (trace.stabilized) {
      TraceRow row = trace.rows.back();
      row.n = n;
      row.ratio = row.log_count / static_cast<double>(n);
      trace.rows.push_back(row);
      continue;
    }
    std::vector<E> shifted = detail::pulled_members(joined, pull);
    std::vector<E> combined;
    combined.reserve(cover.members.size() * shifted.size());
    for (const E& e : cover.members)
      for (const E& g : shifted) combined.push_back(ctx.meet(e, g));
    combined = detail::sorted_dedup(std::move(combined));
    if (combined.size() > size_cap)
      raise(ErrorCode::SizeCapExceeded,
            "joined cover grew past " + std::to_string(size_cap) + " members");
    if (combined == joined) {
      trace.stabilized = true;
      trace.stabilized_at = n - 1;
      TraceRow row = trace.rows.back();
      row.n = n;
      row.ratio = row.log_count / static_cast<double>(n);
      trace.rows.push_back(row);
      continue;
    }
    joined = std::move(combined);
    push_row(n, joined);
  }

  // Subadditivity of a_n, exact on the integer counts.
  for (std::size_t m = 1; m <= n_max; ++m)
    for (std::size_t k = m; m + k <= n_max; ++k) {
      const unsigned __int128 bound =
          static_cast<unsigned __int128>(trace.rows[m - 1].count) *
          static_cast<unsigned __int128>(trace.rows[k - 1].count);
      if (static_cast<unsigned __int128>(trace.rows[m + k - 1].count) > bound)
        raise(ErrorCode::TheoremViolation,
              "subadditivity failed at indices " + std::to_string(m) + "+" +
                  std::to_string(k));
    }

  trace.estimate_index = 1;
  trace.estimate_count = trace.rows[0].count;
  for (const TraceRow& row : trace.rows)
    if (compare_log_ratio(row.count, row.n, trace.estimate_count, trace.estimate_index) < 0) {
      trace.estimate_index = row.n;
      trace.estimate_count = row.count;
    }
  trace.estimate = std::log(static_cast<double>(trace.estimate_count)) /
                   static_cast<double>(trace.estimate_index);
  trace.converged = trace.stabilized && trace.estimate_count == 1;
  trace.last_delta = n_max >= 2 ? trace.rows[n_max - 1].log_count -
                                      trace.rows[n_max - 2].log_count
                                : 0.0;
  return trace;
}

struct CatalogEntropy {
  double estimate = 0.0;  // max over the catalog; a lower bound for the full supremum
  std::size_t best_cover = 0;
  std::vector<EntropyTrace> traces;
};

// Catalog maximum of per-cover trace estimates. The supremum over all covers
// is not computable; this is the lower bound the catalog realizes.
template <class E>
CatalogEntropy catalog_entropy(const std::function<E(const E&)>& pull,
                               const std::vector<Cover<E>>& catalog,
                               const CoverContext<E>& ctx, std::size_t n_max,
                               std::size_t size_cap = 20000) {
  if (catalog.empty()) raise(ErrorCode::InvalidArgument, "empty cover catalog");
  CatalogEntropy result;
  for (const Cover<E>& cover : catalog)
    result.traces.push_back(entropy_trace(pull, cover, ctx, n_max, size_cap));
  for (std::size_t i = 1; i < result.traces.size(); ++i) {
    const EntropyTrace& best = result.traces[result.best_cover];
    const EntropyTrace& cur = result.traces[i];
    if (compare_log_ratio(cur.estimate_count, cur.estimate_index, best.estimate_count,
                          best.estimate_index) > 0)
      result.best_cover = i;
  }
  result.estimate = result.traces[result.best_cover].estimate;
  return result;
}

inline std::function<Observer(const Observer&)> pullback_along(const PointMap& f) {
  return [f](const Observer& obs) { return compose(obs, f); };
}

struct PowerEntropyReport {
  unsigned power = 1;
  // Exact representations of both sides: estimate = log(count)/index.
  std::uint64_t lhs_count = 1;
  std::size_t lhs_index = 1;
  double lhs_estimate = 0.0;  // iterated map, catalog extended by blocked covers
  std::uint64_t rhs_count = 1;
  std::size_t rhs_index = 1;
  double rhs_estimate = 0.0;  // base map at horizon power*n_max
  bool holds = false;         // lhs >= power * rhs, compared exactly
  bool block_identity_ok = false;  // a_n(f^k, blocked cover) == a_{kn}(f) per index
  double naive_lhs = 0.0;     // same catalog, no blocked covers (informational)
};

// Compares the entropy of the k-fold iterate against k times the base
// entropy. The iterate side may use the k-fold joined ("blocked") covers of
// the catalog, and the base side runs to horizon k*n_max, which is what
// makes the inequality a theorem rather than a horizon artifact.
PowerEntropyReport power_entropy_check(const PointMap& f, unsigned power,
                                       const std::vector<Cover<Observer>>& catalog,
                                       const CoverContext<Observer>& ctx,
                                       std::size_t n_max, std::size_t size_cap = 20000);

struct ConjugacyReport {
  bool traces_equal = false;
  std::string detail;
  std::vector<EntropyTrace> forward_traces;   // base map on the catalog
  std::vector<EntropyTrace> mirrored_traces;  // conjugated map on the mapped catalog
};

// For a bijective bicontinuous h with h ∘ g = f ∘ h, maps the catalog
// through h and demands per-index integer equality of the trace counts —
// stronger than equality of the limits.
ConjugacyReport conjugacy_check(const PointMap& f, const PointMap& g, const PointMap& h,
                                const Topology<Observer>& xside,
                                const Topology<Observer>& yside,
                                const std::vector<Cover<Observer>>& catalog,
                                std::size_t n_max, std::size_t size_cap = 20000);

// CSV rows (n, N_n, a_n, a_n/n) for a computed trace.
std::string trace_csv(const EntropyTrace& trace);

}  // namespace infotop
