#include "infotop/entropy.hpp"

#include <sstream>

#include "infotop/error.hpp"

namespace infotop {

int compare_log_ratio(std::uint64_t a_count, std::size_t a_n, std::uint64_t b_count,
                      std::size_t b_n) {
  // log(a)/a_n vs log(b)/b_n  <=>  a^{b_n} vs b^{a_n}, exactly.
  Int lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), a_count, static_cast<unsigned long>(b_n));
  mpz_ui_pow_ui(rhs.get_mpz_t(), b_count, static_cast<unsigned long>(a_n));
  return cmp(lhs, rhs) < 0 ? -1 : (lhs == rhs ? 0 : 1);
}

namespace {

// lhs_count^(lhs_n_scale * rhs_index) >= rhs_count^(rhs_pow * lhs_index)?
bool power_at_least(std::uint64_t lhs_count, std::size_t lhs_index,
                    std::uint64_t rhs_count, std::size_t rhs_index, unsigned rhs_pow) {
  // log(lhs)/lhs_index >= rhs_pow * log(rhs)/rhs_index
  // <=> lhs^{rhs_index} >= rhs^{rhs_pow * lhs_index}
  Int lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), lhs_count, static_cast<unsigned long>(rhs_index));
  mpz_ui_pow_ui(rhs.get_mpz_t(), rhs_count,
                static_cast<unsigned long>(rhs_pow) * static_cast<unsigned long>(lhs_index));
  return lhs >= rhs;
}

}  // namespace

PowerEntropyReport power_entropy_check(const PointMap& f, unsigned power,
                                       const std::vector<Cover<Observer>>& catalog,
                                       const CoverContext<Observer>& ctx,
                                       std::size_t n_max, std::size_t size_cap) {
  if (power < 1) raise(ErrorCode::InvalidArgument, "power must be at least 1");
  PowerEntropyReport report;
  report.power = power;

  auto pull = pullback_along(f);
  auto pull_k = pullback_along(iterate_map(f, power));

  // Base map, run far enough that the blocked traces have a per-index
  // counterpart: horizon power * n_max.
  CatalogEntropy base = catalog_entropy(pull, catalog, ctx, power * n_max, size_cap);
  const EntropyTrace& base_best = base.traces[base.best_cover];
  report.rhs_count = base_best.estimate_count;
  report.rhs_index = base_best.estimate_index;
  report.rhs_estimate = base_best.estimate;

  // The iterate sees the catalog plus the k-fold joined covers.
  std::vector<Cover<Observer>> extended = catalog;
  for (const Cover<Observer>& cover : catalog) {
    Cover<Observer> blocked = cover;
    Cover<Observer> shifted = cover;
    for (unsigned i = 1; i < power; ++i) {
      std::vector<Observer> members;
      for (const Observer& m : shifted.members) members.push_back(pull(m));
      shifted = make_cover(ctx.designated, members, ctx);
      blocked = cover_join(blocked, shifted, ctx);
    }
    extended.push_back(std::move(blocked));
  }

  CatalogEntropy iterate = catalog_entropy(pull_k, extended, ctx, n_max, size_cap);
  const EntropyTrace& iter_best = iterate.traces[iterate.best_cover];
  report.lhs_count = iter_best.estimate_count;
  report.lhs_index = iter_best.estimate_index;
  report.lhs_estimate = iter_best.estimate;

  CatalogEntropy naive = catalog_entropy(pull_k, catalog, ctx, n_max, size_cap);
  report.naive_lhs = naive.estimate;

  // Per-index identity: the trace of the blocked cover under f^power matches
  // the base trace at stride `power`, as exact integers.
  report.block_identity_ok = true;
  for (std::size_t c = 0; c < catalog.size() && report.block_identity_ok; ++c) {
    const EntropyTrace& blocked_trace = iterate.traces[catalog.size() + c];
    const EntropyTrace& base_trace = base.traces[c];
    for (std::size_t n = 1; n <= n_max; ++n)
      if (blocked_trace.rows[n - 1].count != base_trace.rows[power * n - 1].count) {
        report.block_identity_ok = false;
        break;
      }
  }

  report.holds = power_at_least(report.lhs_count, report.lhs_index, report.rhs_count,
                                report.rhs_index, power);
  return report;
}

ConjugacyReport conjugacy_check(const PointMap& f, const PointMap& g, const PointMap& h,
                                const Topology<Observer>& xside,
                                const Topology<Observer>& yside,
                                const std::vector<Cover<Observer>>& catalog,
                                std::size_t n_max, std::size_t size_cap) {
  if (!h.is_bijection())
    raise(ErrorCode::NotHomeomorphism, "the intertwining map is not a bijection");
  if (!continuity_check(h, yside, xside).continuous())
    raise(ErrorCode::NotHomeomorphism, "the intertwining map is not continuous");
  if (!continuity_check(inverse(h), xside, yside).continuous())
    raise(ErrorCode::NotHomeomorphism, "the inverse map is not continuous");
  // h ∘ g = f ∘ h, pointwise.
  const PointMap lhs = compose(h, g);
  const PointMap rhs = compose(f, h);
  if (lhs.image != rhs.image)
    raise(ErrorCode::NotIntertwining, "h∘g and f∘h disagree on a point");

  CoverContext<Observer> xctx = cover_context(xside);
  CoverContext<Observer> yctx = cover_context(yside);
  auto pull_f = pullback_along(f);
  auto pull_g = pullback_along(g);

  ConjugacyReport report;
  report.traces_equal = true;
  for (const Cover<Observer>& cover : catalog) {
    EntropyTrace forward = entropy_trace(pull_f, cover, xctx, n_max, size_cap);
    Cover<Observer> mapped = cover_pullback(cover, h, yctx);
    EntropyTrace mirrored = entropy_trace(pull_g, mapped, yctx, n_max, size_cap);
    for (std::size_t n = 1; n <= n_max; ++n)
      if (forward.rows[n - 1].count != mirrored.rows[n - 1].count) {
        report.traces_equal = false;
        report.detail = "trace counts differ at n=" + std::to_string(n);
      }
    report.forward_traces.push_back(std::move(forward));
    report.mirrored_traces.push_back(std::move(mirrored));
  }
  return report;
}

std::string trace_csv(const EntropyTrace& trace) {
  std::ostringstream out;
  out << "n,N,log,ratio\n";
  for (const TraceRow& row : trace.rows)
    out << row.n << "," << row.count << "," << format_decimal(row.log_count) << ","
        << format_decimal(row.ratio) << "\n";
  return out.str();
}

}  // namespace infotop
