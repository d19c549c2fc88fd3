#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fixtures_common.hpp"
#include "generators.hpp"
#include "infotop/covers.hpp"
#include "infotop/error.hpp"

using namespace infotop;

namespace {

Topology<Rat> three_level() {
  Topology<Rat> t;
  t.universe = scalar_universe({Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)});
  t.opens = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)};
  t.designated = Rat(1);
  t.least = Rat(0);
  return t;
}

ClassicalEmbedding discrete_embedding(const std::vector<std::string>& points) {
  std::vector<std::vector<std::string>> sets;
  const std::size_t n = points.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<std::string> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) s.push_back(points[i]);
    sets.push_back(std::move(s));
  }
  return embed_classical(points, sets);
}

Topology<Observer> embedding_topology(const ClassicalEmbedding& emb) {
  Topology<Observer> t;
  t.universe = observer_universe(emb.observers, ClosureMode::Closed);
  t.opens = emb.observers;
  t.designated = emb.full;
  t.least = emb.empty;
  return t;
}

}  // namespace

TEST_CASE("covers record a witness whose meet with the designated element is the target") {
  Topology<Rat> t = three_level();
  CoverContext<Rat> ctx = cover_context(t);

  Cover<Rat> c = make_cover<Rat>(Rat(1), {Rat(1, 2), Rat(1)}, ctx);
  CHECK(c.witness == Rat(1));

  Cover<Rat> trivial = make_cover<Rat>(Rat(1), {Rat(1)}, ctx);
  CHECK(trivial.witness == Rat(1));

  CHECK_THROWS_WITH_AS(make_cover<Rat>(Rat(1), {Rat(0), Rat(1, 2)}, ctx),
                       doctest::Contains("NotACover"), Error);
  CHECK_THROWS_WITH_AS(make_cover<Rat>(Rat(1), {Rat(3, 4)}, ctx),
                       doctest::Contains("member is not an open"), Error);
}

TEST_CASE("minimal subcovers by exhaustive ascending search") {
  Topology<Rat> t = three_level();
  CoverContext<Rat> ctx = cover_context(t);

  SUBCASE("a dominating member alone suffices") {
    Cover<Rat> c = make_cover<Rat>(Rat(1), {Rat(1, 2), Rat(1)}, ctx);
    MinSubcoverResult min = min_subcover(c, ctx);
    CHECK(min.count == 1);
    CHECK(c.members[min.member_indices[0]] == Rat(1));
  }
  SUBCASE("a singleton cover has count one") {
    Cover<Rat> c = make_cover<Rat>(Rat(1), {Rat(1)}, ctx);
    CHECK(min_subcover(c, ctx).count == 1);
  }
}

TEST_CASE("only the full singleton family reaches the designated element") {
  // Discrete embedding on four points, covered by the four singletons: every
  // proper subfamily sups strictly below the full set.
  ClassicalEmbedding emb = discrete_embedding({"a", "b", "c", "d"});
  Topology<Observer> t = embedding_topology(emb);
  CoverContext<Observer> ctx = cover_context(t);
  std::vector<Observer> singletons;
  for (std::size_t i = 0; i < emb.sets.size(); ++i)
    if (emb.sets[i].size() == 1) singletons.push_back(emb.observers[i]);
  REQUIRE(singletons.size() == 4);
  Cover<Observer> c = make_cover(t.designated, singletons, ctx);
  MinSubcoverResult min = min_subcover(c, ctx);
  CHECK(min.count == 4);
  CHECK(min.exhaustive);

  // The result must itself cover, and the search is exhaustive below it.
  std::vector<Observer> chosen;
  for (std::size_t i : min.member_indices) chosen.push_back(c.members[i]);
  CHECK(subset_covers(chosen, c.target, ctx));
}

TEST_CASE("cover entropy is the log of the minimal count") {
  Topology<Rat> t = three_level();
  CoverContext<Rat> ctx = cover_context(t);
  Cover<Rat> one = make_cover<Rat>(Rat(1), {Rat(1)}, ctx);
  CHECK(cover_entropy(one, ctx).count == 1);
  CHECK(cover_entropy(one, ctx).log_count == 0.0);

  ClassicalEmbedding emb = discrete_embedding({"a", "b", "c"});
  Topology<Observer> et = embedding_topology(emb);
  CoverContext<Observer> ectx = cover_context(et);
  std::vector<Observer> singletons;
  for (std::size_t i = 0; i < emb.sets.size(); ++i)
    if (emb.sets[i].size() == 1) singletons.push_back(emb.observers[i]);
  Cover<Observer> c = make_cover(et.designated, singletons, ectx);
  CoverEntropy e = cover_entropy(c, ectx);
  CHECK(e.count == 3);
  CHECK(e.log_count == doctest::Approx(std::log(3.0)));
}

TEST_CASE("cover joins meet members pairwise") {
  Topology<Rat> t = three_level();
  CoverContext<Rat> ctx = cover_context(t);
  Cover<Rat> a = make_cover<Rat>(Rat(1), {Rat(1, 2), Rat(1)}, ctx);
  Cover<Rat> b = make_cover<Rat>(Rat(1), {Rat(1, 4), Rat(1)}, ctx);

  SUBCASE("with itself: the same members after dedup") {
    Cover<Rat> self = cover_join(a, a, ctx);
    CHECK(self.members == a.members);
  }
  SUBCASE("with the trivial cover: members meet the designated element") {
    Cover<Rat> trivial = make_cover<Rat>(Rat(1), {Rat(1)}, ctx);
    Cover<Rat> joined = cover_join(a, trivial, ctx);
    CHECK(joined.members == a.members);
  }
  SUBCASE("pairwise meets of the two member lists") {
    Cover<Rat> joined = cover_join(a, b, ctx);
    CHECK(joined.members == std::vector<Rat>{Rat(1, 4), Rat(1, 2), Rat(1)});
    CHECK(joined.witness == Rat(1));
  }
  SUBCASE("targets must agree") {
    Cover<Rat> of_half = make_cover<Rat>(Rat(1, 2), {Rat(1, 2)}, ctx);
    CHECK_THROWS_WITH_AS(cover_join(a, of_half, ctx), doctest::Contains("TargetMismatch"),
                         Error);
  }
}

TEST_CASE("cover combination refuses a non-commutative meet") {
  AlgebraUniverse<std::string> u;
  u.elements = {"O", "A", "B", "F"};
  u.join = [](const std::string& x, const std::string& y) {
    if (x == y) return x;
    if (x == "O") return y;
    if (y == "O") return x;
    return std::string("F");
  };
  // Left projection on {A,B}: not commutative.
  u.meet = [](const std::string& x, const std::string& y) {
    if (x == y) return x;
    if (x == "O" || y == "O") return std::string("O");
    if (x == "F") return y;
    if (y == "F") return x;
    return x;
  };
  Topology<std::string> t;
  t.universe = u;
  t.opens = {"O", "A", "B", "F"};
  t.designated = "F";
  t.least = "O";
  CoverContext<std::string> ctx = cover_context(t);
  Cover<std::string> ca = make_cover<std::string>("F", {"A", "F"}, ctx);
  Cover<std::string> cb = make_cover<std::string>("F", {"B", "F"}, ctx);
  CHECK_THROWS_WITH_AS(cover_join(ca, cb, ctx), doctest::Contains("NonCommutativeMeet"),
                       Error);
}

TEST_CASE("union refinement meets every pair from the combined pool") {
  Topology<Rat> t = three_level();
  CoverContext<Rat> ctx = cover_context(t);
  Cover<Rat> a = make_cover<Rat>(Rat(1), {Rat(1, 2), Rat(1)}, ctx);
  Cover<Rat> b = make_cover<Rat>(Rat(1), {Rat(1, 4), Rat(1)}, ctx);

  Cover<Rat> self = cover_union_refine(a, a, ctx);
  CHECK(self.members == a.members);

  Cover<Rat> refined = cover_union_refine(a, b, ctx);
  CHECK(refined.members == std::vector<Rat>{Rat(1, 4), Rat(1, 2), Rat(1)});
  // Refinement entropy never exceeds the sum of the pieces.
  CHECK(cover_entropy(refined, ctx).count <=
        cover_entropy(a, ctx).count * cover_entropy(b, ctx).count);
}

TEST_CASE("join entropy is submultiplicative on seeded cover pairs") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> coin(0, 1);
  auto topologies = generators::random_topologies(10, 515);
  int pairs = 0;
  for (const auto& t : topologies) {
    CoverContext<Observer> ctx = cover_context(t);
    auto random_cover = [&]() -> std::optional<Cover<Observer>> {
      std::vector<Observer> members;
      for (const Observer& o : t.opens)
        if (coin(rng)) members.push_back(o);
      if (members.empty()) return std::nullopt;
      try {
        return make_cover(t.designated, members, ctx);
      } catch (const Error&) {
        return std::nullopt;
      }
    };
    for (int trial = 0; trial < 8; ++trial) {
      auto a = random_cover();
      auto b = random_cover();
      if (!a || !b) continue;
      Cover<Observer> joined = cover_join(*a, *b, ctx);
      CHECK(cover_entropy(joined, ctx).count <=
            cover_entropy(*a, ctx).count * cover_entropy(*b, ctx).count);
      ++pairs;
    }
  }
  CHECK(pairs >= 20);
}

TEST_CASE("cover pullback along maps") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b", "c"});
  Topology<Observer> t = embedding_topology(emb);
  CoverContext<Observer> ctx = cover_context(t);
  std::vector<Observer> singletons;
  for (std::size_t i = 0; i < emb.sets.size(); ++i)
    if (emb.sets[i].size() == 1) singletons.push_back(emb.observers[i]);
  Cover<Observer> c = make_cover(t.designated, singletons, ctx);

  SUBCASE("identity keeps the cover") {
    Cover<Observer> pulled = cover_pullback(c, identity_map(emb.ground), ctx);
    CHECK(pulled.members == c.members);
  }
  SUBCASE("a bijective relabel preserves the minimal count") {
    auto yground = make_ground({"p", "q", "r"}, {"chi"});
    PointMap h(yground, emb.ground, {2, 0, 1});
    Topology<Observer> yside = pullback_space(h, t);
    CoverContext<Observer> yctx = cover_context(yside);
    Cover<Observer> pulled = cover_pullback(c, h, yctx);
    CHECK(min_subcover(pulled, yctx).count == min_subcover(c, ctx).count);
  }
}

TEST_CASE("compactness on finite topologies is cover existence") {
  Topology<Rat> t = three_level();
  CompactnessReport report = compactness_check(t.designated, t);
  CHECK(report.eligible);
  CHECK(report.compact);
  CHECK_FALSE(report.certificate_open_indices.empty());

  SUBCASE("every open of the scalar chain is compact") {
    for (const Rat& h : t.opens) CHECK(compactness_check(h, t).compact);
  }
  SUBCASE("an element above the designated one is not eligible") {
    Topology<Rat> t2 = t;
    t2.universe = scalar_universe({Rat(0), Rat(1, 4), Rat(1, 2), Rat(1), Rat(1)});
    CHECK(compactness_check(Rat(1, 4), t2).eligible);
  }
}

TEST_CASE("scale families are compact only at the bottom scale") {
  auto ground = fixtures::table1_ground();
  Observer mu = fixtures::table1_observer(ground);
  ScaleTopology t(ScaleFamily(mu, Rat(0), Rat(1)));

  CompactnessReport designated = compactness_check(t.designated, t);
  CHECK(designated.eligible);
  CHECK_FALSE(designated.compact);

  CompactnessReport bottom = compactness_check(t.least, t);
  CHECK(bottom.compact);

  CompactnessReport middle = compactness_check(scale(Rat(1, 2), mu), t);
  CHECK_FALSE(middle.compact);

  SUBCASE("a degenerate range is compact everywhere") {
    ScaleTopology point(ScaleFamily(mu, Rat(1, 2), Rat(1, 2)));
    CHECK(compactness_check(point.designated, point).compact);
  }
}

TEST_CASE("two-level families are compact") {
  auto ground = make_ground({"x-1", "x0", "x1"}, {"rate"});
  TwoLevelTopology t(TwoLevelFamily(ground, Rat(1), Rat(0), {0, 1}));
  CHECK(compactness_check(t.designated, t).compact);
  CHECK(compactness_check(t.least, t).compact);
}

TEST_CASE("joins of compact elements stay compact on enumerated fixtures") {
  Topology<Rat> t = three_level();

  SUBCASE("an element joined with itself") {
    CompactJoinReport report = compact_join_check(Rat(1, 2), Rat(1, 2), t);
    CHECK(report.hypothesis_holds);
    CHECK(report.join_compact);
    CHECK(report.lemma_inclusion_holds);
  }
  SUBCASE("comparable elements") {
    CompactJoinReport report = compact_join_check(Rat(1, 4), Rat(1, 2), t);
    CHECK(report.join_compact);
    CHECK(report.lemma_inclusion_holds);
  }
}

TEST_CASE("compactness transfers along observer-separating pullbacks") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b"});
  Topology<Observer> xside = embedding_topology(emb);

  SUBCASE("along a bijection") {
    auto yground = make_ground({"p", "q"}, {"chi"});
    PointMap f(yground, emb.ground, {1, 0});
    Topology<Observer> yside = pullback_space(f, xside);
    CompactPullbackReport report =
        compact_pullback_check(emb.observers[1], f, yside, xside);
    CHECK(report.observer_injective);
    CHECK(report.family_matches);
    CHECK(report.transfer_holds);
  }
  SUBCASE("along a surjective non-injective map") {
    auto yground = make_ground({"p", "q", "r"}, {"chi"});
    PointMap f(yground, emb.ground, {0, 1, 1});
    Topology<Observer> yside = pullback_space(f, xside);
    CompactPullbackReport report =
        compact_pullback_check(emb.observers[1], f, yside, xside);
    CHECK(report.observer_injective);
    CHECK(report.transfer_holds);
  }
  SUBCASE("a collapsing map fails the separation hypothesis") {
    auto yground = make_ground({"p", "q"}, {"chi"});
    PointMap f(yground, emb.ground, {0, 0});
    Topology<Observer> yside = pullback_space(f, xside);
    CHECK_THROWS_WITH_AS(compact_pullback_check(emb.observers[1], f, yside, xside),
                         doctest::Contains("HypothesisNotMet"), Error);
  }
}
