#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "fixtures_common.hpp"
#include "generators.hpp"
#include "infotop/error.hpp"
#include "infotop/spaces.hpp"
#include "infotop/topology.hpp"

using namespace infotop;

namespace {

Topology<Observer> embedding_topology(const ClassicalEmbedding& emb) {
  Topology<Observer> t;
  t.universe = observer_universe(emb.observers, ClosureMode::Closed);
  t.opens = emb.observers;
  t.designated = emb.full;
  t.least = emb.empty;
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

}  // namespace

TEST_CASE("three-level scalar chain validates exhaustively") {
  Topology<Rat> t;
  t.universe = scalar_universe({Rat(0), Rat(1, 2), Rat(1)});
  t.opens = {Rat(0), Rat(1, 2), Rat(1)};
  t.designated = Rat(1);
  t.least = Rat(0);
  TopologyReport report = validate_topology(t);
  CHECK(report.valid());
  CHECK(report.subsets_exhaustive);
  CHECK(report.subsets_checked == 7);
}

TEST_CASE("scale family topology validates by parameter reasoning") {
  auto ground = fixtures::table1_ground();
  ScaleTopology t(ScaleFamily(fixtures::table1_observer(ground), Rat(0), Rat(1)));
  TopologyReport report = validate_scale_topology(t);
  CHECK(report.valid());
  CHECK_FALSE(report.subsets_exhaustive);
}

TEST_CASE("a missing least element is reported") {
  Topology<Rat> t;
  t.universe = scalar_universe({Rat(0), Rat(1, 2), Rat(1)});
  t.opens = {Rat(1, 2), Rat(1)};
  t.designated = Rat(1);
  t.least = Rat(0);  // not listed as open
  TopologyReport report = validate_topology(t);
  CHECK_FALSE(report.valid());
  CHECK(report.first_violation()->name == "least-element");
}

TEST_CASE("interior of the scalar example") {
  Topology<Rat> t = fixtures::scalar_example_topology();
  REQUIRE(validate_topology(t).valid());

  SUBCASE("a non-open element has a strictly smaller interior") {
    auto interior = interior_of(Rat(7, 10), t);
    REQUIRE(interior.size() == 1);
    CHECK(interior[0] == Rat(1, 2));
    CHECK_FALSE(is_open(Rat(7, 10), t).open);
  }
  SUBCASE("an open element belongs to its own interior") {
    auto interior = interior_of(Rat(1, 2), t);
    CHECK(std::find(interior.begin(), interior.end(), Rat(1, 2)) != interior.end());
    CHECK(is_open(Rat(1, 2), t).open);
  }
  SUBCASE("the designated element is in its own interior") {
    auto interior = interior_of(t.designated, t);
    CHECK(std::find(interior.begin(), interior.end(), t.designated) != interior.end());
  }
  SUBCASE("the least element is open") { CHECK(is_open(t.least, t).open); }
  SUBCASE("interior members are absorbed by the element") {
    for (const Rat& h : t.universe.elements) {
      std::vector<Rat> interior;
      try {
        interior = interior_of(h, t);
      } catch (const Error&) {
        continue;
      }
      for (const Rat& g : interior) CHECK(t.universe.meet(g, h) == g);
    }
  }
}

TEST_CASE("an element below every open has no interior family") {
  Topology<Rat> t;
  t.universe = scalar_universe({Rat(0), Rat(1, 4), Rat(1, 2), Rat(7, 10), Rat(1)});
  t.opens = {Rat(1, 2), Rat(1)};
  t.designated = Rat(1);
  t.least = Rat(1, 2);
  REQUIRE(validate_topology(t).valid());
  CHECK_THROWS_WITH_AS(interior_of(Rat(1, 4), t), doctest::Contains("EmptyInteriorFamily"),
                       Error);
}

TEST_CASE("classical complements match set complements") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b"});
  Topology<Observer> t = embedding_topology(emb);
  REQUIRE(validate_topology(t).valid());

  for (std::size_t i = 0; i < emb.sets.size(); ++i) {
    // Set-complement oracle.
    std::vector<std::string> expected;
    for (const auto& p : std::vector<std::string>{"a", "b"})
      if (std::find(emb.sets[i].begin(), emb.sets[i].end(), p) == emb.sets[i].end())
        expected.push_back(p);
    Observer complement = complement_of(emb.observers[i], t);
    std::size_t j = 0;
    while (!(emb.sets[j] == expected)) ++j;
    CHECK(complement == emb.observers[j]);
  }
  CHECK(complement_of(t.designated, t) == t.least);
  CHECK(complement_of(t.least, t) == t.designated);
}

TEST_CASE("a middle scalar level has no complement") {
  Topology<Rat> t;
  t.universe = scalar_universe({Rat(0), Rat(3, 10), Rat(1)});
  t.opens = {Rat(0), Rat(3, 10), Rat(1)};
  t.designated = Rat(1);
  t.least = Rat(0);
  REQUIRE(validate_topology(t).valid());
  // max(3/10, s) = 1 forces s = 1, but min(3/10, 1) = 3/10, not 0.
  CHECK_THROWS_WITH_AS(complement_of(Rat(3, 10), t), doctest::Contains("NoComplement"),
                       Error);
}

TEST_CASE("closedness depends on the complement being open") {
  ClassicalEmbedding emb = embed_classical({"a", "b"}, {{}, {"a"}, {"a", "b"}});
  Topology<Observer> t;
  // Universe holds all four subsets so complements exist; opens only three.
  ClassicalEmbedding full = discrete_embedding({"a", "b"});
  t.universe = observer_universe(full.observers, ClosureMode::Closed);
  t.opens = emb.observers;
  t.designated = emb.full;
  t.least = emb.empty;
  REQUIRE(validate_topology(t).valid());

  const Observer chi_a = emb.observers[1];
  CHECK(is_closed(t.designated, t));
  CHECK_FALSE(is_closed(chi_a, t));  // complement {b} is not open

  SUBCASE("every subset is closed in the discrete embedding") {
    Topology<Observer> discrete = embedding_topology(full);
    for (const Observer& obs : full.observers) CHECK(is_closed(obs, discrete));
  }
}

TEST_CASE("closed meets verify on the discrete embedding, pairwise") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b", "c"});
  Topology<Observer> t = embedding_topology(emb);
  for (const Observer& a : emb.observers)
    for (const Observer& b : emb.observers) {
      ClosedMeetReport<Observer> report = closed_meet_check(a, b, t);
      CHECK(report.outcome == ClosedMeetOutcome::Verified);
      REQUIRE(report.meet_complement.has_value());
      CHECK(*report.meet_complement ==
            join(complement_of(a, t), complement_of(b, t)));
    }
}

TEST_CASE("closed meet of an element with itself reuses its complement") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b"});
  Topology<Observer> t = embedding_topology(emb);
  const Observer chi_a = emb.observers[1];
  ClosedMeetReport<Observer> report = closed_meet_check(chi_a, chi_a, t);
  CHECK(report.outcome == ClosedMeetOutcome::Verified);
  CHECK(*report.meet_complement == complement_of(chi_a, t));
}

namespace {

// Hand-built operation tables over string labels, for exercising the
// hypothesis branches that pointwise min/max can never reach.
struct TableOps {
  std::map<std::pair<std::string, std::string>, std::string> meets, joins;

  std::string meet(const std::string& x, const std::string& y) const {
    if (x == y) return x;
    if (x == "F") return y;
    if (y == "F") return x;
    if (x == "O" || y == "O") return "O";
    auto it = meets.find({x, y});
    return it != meets.end() ? it->second : "O";
  }
  std::string join(const std::string& x, const std::string& y) const {
    if (x == y) return x;
    if (x == "F" || y == "F") return "F";
    if (x == "O") return y;
    if (y == "O") return x;
    auto it = joins.find({x, y});
    return it != joins.end() ? it->second : "F";
  }
};

Topology<std::string> table_topology(const TableOps& ops) {
  Topology<std::string> t;
  t.universe.elements = {"O", "A", "B", "C", "Ac", "Bc", "F"};
  t.universe.join = [ops](const std::string& x, const std::string& y) {
    return ops.join(x, y);
  };
  t.universe.meet = [ops](const std::string& x, const std::string& y) {
    return ops.meet(x, y);
  };
  t.opens = {"O", "Ac", "Bc", "F"};
  t.designated = "F";
  t.least = "O";
  return t;
}

}  // namespace

TEST_CASE("the first side condition can fail outside pointwise algebras") {
  TableOps ops;
  auto sym = [&](auto& table, const std::string& x, const std::string& y,
                 const std::string& v) {
    table[{x, y}] = v;
    table[{y, x}] = v;
  };
  sym(ops.meets, "A", "B", "C");
  sym(ops.meets, "A", "Bc", "C");
  sym(ops.meets, "B", "Ac", "C");
  sym(ops.meets, "A", "C", "C");
  sym(ops.meets, "B", "C", "C");
  sym(ops.meets, "C", "Ac", "C");  // (A ∧ B) ∧ Ac stays C, never O

  Topology<std::string> t = table_topology(ops);
  REQUIRE(is_closed<std::string>("A", t));
  REQUIRE(is_closed<std::string>("B", t));
  ClosedMeetReport<std::string> report = closed_meet_check<std::string>("A", "B", t);
  CHECK(report.outcome == ClosedMeetOutcome::FirstHypothesisFails);
}

TEST_CASE("the second side condition can fail outside pointwise algebras") {
  TableOps ops;
  auto sym = [&](auto& table, const std::string& x, const std::string& y,
                 const std::string& v) {
    table[{x, y}] = v;
    table[{y, x}] = v;
  };
  sym(ops.meets, "A", "Bc", "C");
  sym(ops.meets, "B", "Ac", "C");
  sym(ops.meets, "A", "C", "C");
  sym(ops.meets, "B", "C", "C");
  sym(ops.joins, "A", "B", "C");  // keeps B from doubling as A's complement
  sym(ops.joins, "B", "Ac", "C");
  sym(ops.joins, "C", "Bc", "C");  // B ∨ Ac ∨ Bc stays C, never F

  Topology<std::string> t = table_topology(ops);
  REQUIRE(is_closed<std::string>("A", t));
  REQUIRE(is_closed<std::string>("B", t));
  // meet(A, B) defaults to O, so the first condition holds.
  ClosedMeetReport<std::string> report = closed_meet_check<std::string>("A", "B", t);
  CHECK(report.outcome == ClosedMeetOutcome::SecondHypothesisFails);
}

TEST_CASE("identity maps are continuous") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b"});
  Topology<Observer> t = embedding_topology(emb);
  CHECK(continuity_check(identity_map(emb.ground), t, t).continuous());
}

TEST_CASE("pullback spaces are continuous by construction") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b"});
  Topology<Observer> t = embedding_topology(emb);
  auto yground = make_ground({"p", "q", "r"}, {"chi"});
  PointMap f(yground, emb.ground, {0, 1, 1});
  Topology<Observer> pulled = pullback_space(f, t);
  CHECK(validate_topology(pulled).valid());
  CHECK(continuity_check(f, pulled, t).continuous());
}

TEST_CASE("a map whose pullbacks escape the source opens is not continuous") {
  ClassicalEmbedding xemb = discrete_embedding({"a", "b"});
  Topology<Observer> xside = embedding_topology(xemb);
  ClassicalEmbedding yemb = embed_classical({"p", "q"}, {{}, {"p", "q"}});
  Topology<Observer> yside;
  ClassicalEmbedding yfull = discrete_embedding({"p", "q"});
  yside.universe = observer_universe(yfull.observers, ClosureMode::Closed);
  yside.opens = yemb.observers;
  yside.designated = yemb.full;
  yside.least = yemb.empty;
  REQUIRE(validate_topology(yside).valid());

  PointMap f(yfull.ground, xemb.ground, {0, 1});
  ContinuityReport report = continuity_check(f, yside, xside);
  CHECK_FALSE(report.continuous());
  bool opens_failed = false;
  for (const auto& line : report.checks)
    if (line.name == "opens-pullback" && !line.holds()) opens_failed = true;
  CHECK(opens_failed);
}

TEST_CASE("composition of continuous maps is continuous") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b"});
  Topology<Observer> xside = embedding_topology(emb);
  auto yground = make_ground({"y1", "y2"}, {"chi"});
  PointMap f(yground, emb.ground, {1, 0});
  Topology<Observer> yside = pullback_space(f, xside);
  auto zground = make_ground({"z1", "z2"}, {"chi"});
  PointMap g(zground, yground, {0, 0});
  Topology<Observer> zside = pullback_space(g, yside);

  REQUIRE(continuity_check(f, yside, xside).continuous());
  REQUIRE(continuity_check(g, zside, yside).continuous());
  CHECK(continuity_check(compose(f, g), zside, xside).continuous());
}

TEST_CASE("pullback along the identity reproduces the space") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b"});
  Topology<Observer> t = embedding_topology(emb);
  Topology<Observer> pulled = pullback_space(identity_map(emb.ground), t);
  CHECK(pulled.opens.size() == t.opens.size());
  for (const Observer& o : t.opens)
    CHECK(std::find(pulled.opens.begin(), pulled.opens.end(), o) != pulled.opens.end());
  CHECK(pulled.designated == t.designated);
}

TEST_CASE("pullback along a constant map collapses to constants and stays valid") {
  ClassicalEmbedding emb = discrete_embedding({"a", "b"});
  Topology<Observer> t = embedding_topology(emb);
  auto yground = make_ground({"p", "q"}, {"chi"});
  PointMap constant(yground, emb.ground, {0, 0});
  Topology<Observer> pulled = pullback_space(constant, t);
  CHECK(validate_topology(pulled).valid());
  for (const Observer& o : pulled.opens)
    CHECK(o.at(0, 0) == o.at(1, 0));
}

TEST_CASE("pullback along a bijection preserves structure") {
  auto ground = fixtures::table1_ground();
  Observer mu = fixtures::table1_observer(ground);
  Observer half = scale(Rat(1, 2), mu);
  Observer zero = Observer::constant(ground, Rat(0));
  Topology<Observer> t;
  t.universe = observer_universe({zero, half, mu}, ClosureMode::Closed);
  t.opens = {zero, half, mu};
  t.designated = mu;
  t.least = zero;
  REQUIRE(validate_topology(t).valid());

  auto relabeled = make_ground({"s1", "s2", "s3", "s4", "s5", "s6"}, {"T", "A", "D"});
  PointMap h(relabeled, ground, {5, 4, 3, 2, 1, 0});
  Topology<Observer> pulled = pullback_space(h, t);
  CHECK(validate_topology(pulled).valid());
  CHECK(pulled.opens.size() == t.opens.size());
  for (const Observer& o : t.opens)
    CHECK(is_open(compose(o, h), pulled).open);
}

TEST_CASE("openness matches interior membership on generated topologies") {
  auto topologies = generators::random_topologies(12, 99);
  for (const auto& t : topologies) {
    for (const Observer& h : t.universe.elements) {
      OpennessCertificate<Observer> cert = is_open(h, t);  // raises on any mismatch
      CHECK(cert.open == cert.in_interior);
    }
  }
}

TEST_CASE("products need matching dimension lists") {
  auto g1 = make_ground({"a"}, {"d"});
  auto g2 = make_ground({"b"}, {"e"});
  Topology<Observer> t1, t2;
  t1.universe = observer_universe({Observer::constant(g1, Rat(1))}, ClosureMode::Closed);
  t1.opens = t1.universe.elements;
  t1.designated = t1.opens[0];
  t1.least = t1.opens[0];
  t2.universe = observer_universe({Observer::constant(g2, Rat(1))}, ClosureMode::Closed);
  t2.opens = t2.universe.elements;
  t2.designated = t2.opens[0];
  t2.least = t2.opens[0];
  CHECK_THROWS_WITH_AS(product_space({t1, t2}), doctest::Contains("IncompatibleIndexSets"),
                       Error);
}

TEST_CASE("products of two-level scalar observer spaces validate") {
  auto ground = make_ground({"x"}, {"d"});
  Observer zero = Observer::constant(ground, Rat(0));
  Observer one = Observer::constant(ground, Rat(1));
  Topology<Observer> factor;
  factor.universe = observer_universe({zero, one}, ClosureMode::Closed);
  factor.opens = {zero, one};
  factor.designated = one;
  factor.least = zero;
  REQUIRE(validate_topology(factor).valid());

  SUBCASE("a single factor reproduces the factor") {
    ProductSpace p = product_space({factor});
    CHECK(p.topology.opens.size() == 2);
    CHECK(validate_topology(p.topology).valid());
  }
  SUBCASE("two factors give four opens") {
    ProductSpace p = product_space({factor, factor});
    CHECK(p.topology.opens.size() == 4);
    CHECK(p.topology.universe.elements.size() == 4);
    CHECK(validate_topology(p.topology).valid());
    CHECK(p.point_tuples == std::vector<std::string>{"x|x"});
  }
}
