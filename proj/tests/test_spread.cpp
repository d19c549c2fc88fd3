#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "infotop/error.hpp"
#include "infotop/spread.hpp"

using namespace infotop;

namespace {

SpreadModel single_method(const Rat& gamma, int cap = 10,
                          std::vector<Rat> initial = {}) {
  std::vector<std::vector<Rat>> init;
  if (!initial.empty()) init.push_back(std::move(initial));
  return make_spread_model({"m"}, {Rat(0)}, {gamma}, cap, Rat(0), Rat(10), init);
}

// Independent oracle for small n: the factorial-form solution
//   p_n(t) = (n-1)! γ^n t^n / n!
//          + sum_j (n-1)!/(j-1)! * γ^{n-j} p_j(0) t^{n-j} / (n-j)!
//          + p_n(0),
// written out term by term rather than via the integration recursion.
Rat display_form(const Rat& gamma, const std::vector<Rat>& init, unsigned n, const Rat& t) {
  auto factorial = [](unsigned v) {
    Rat f(1);
    for (unsigned i = 2; i <= v; ++i) f *= static_cast<long>(i);
    return f;
  };
  auto pow_rat = [](const Rat& base, unsigned e) {
    Rat p(1);
    for (unsigned i = 0; i < e; ++i) {
      p *= base;
      p.canonicalize();
    }
    return p;
  };
  if (n == 0) return (Rat(1) - gamma) * t + init[0];
  if (n == 1) return gamma * t + init[1];
  Rat total = factorial(n - 1) * pow_rat(gamma, n) * pow_rat(t, n) / factorial(n);
  for (unsigned j = 1; j < n; ++j)
    total += factorial(n - 1) / factorial(j - 1) * pow_rat(gamma, n - j) * init[j] *
             pow_rat(t, n - j) / factorial(n - j);
  total += init[n];
  total.canonicalize();
  return total;
}

}  // namespace

TEST_CASE("first levels of the closed form") {
  SpreadModel model = single_method(frac(1, 100));
  CHECK(probability_closed_form(model, 0, 1, Rat(10)) == frac(1, 10));
  CHECK(probability_closed_form(model, 0, 2, Rat(10)) == frac(1, 200));
  CHECK(probability_closed_form(model, 0, 0, Rat(10)) == frac(99, 10));

  SUBCASE("time zero returns the initial probabilities") {
    std::vector<Rat> init(11, Rat(0));
    init[3] = frac(3, 7);
    SpreadModel seeded = single_method(frac(1, 100), 10, init);
    for (unsigned n = 0; n <= 10; ++n)
      CHECK(probability_closed_form(seeded, 0, n, Rat(0)) == init[n]);
  }
  SUBCASE("n beyond the cap is rejected") {
    CHECK_THROWS_WITH_AS(probability_closed_form(model, 0, 11, Rat(1)),
                         doctest::Contains("IndexOutOfRange"), Error);
  }
  SUBCASE("time outside the interval is rejected") {
    CHECK_THROWS_WITH_AS(probability_closed_form(model, 0, 1, Rat(11)),
                         doctest::Contains("ValueOutOfRange"), Error);
  }
}

TEST_CASE("the polynomial recursion matches the factorial display for n <= 4") {
  std::vector<Rat> init = {Rat(0), frac(1, 5), frac(1, 7), frac(2, 9), frac(1, 11),
                           Rat(0), Rat(0),     Rat(0),     Rat(0),     Rat(0),
                           Rat(0)};
  for (const Rat& gamma : {frac(1, 100), frac(1, 200), frac(7, 1000), frac(1, 3)}) {
    SpreadModel model = single_method(gamma, 10, init);
    for (unsigned n = 0; n <= 4; ++n)
      for (const Rat& t : {Rat(0), Rat(1), frac(5, 2), Rat(10)})
        CHECK(probability_closed_form(model, 0, n, t) == display_form(gamma, init, n, t));
  }
}

TEST_CASE("probability polynomials have degree exactly n with zero start") {
  std::vector<Rat> zeros(11, Rat(0));
  for (unsigned n = 1; n <= 10; ++n) {
    std::vector<Rat> poly = probability_polynomial(frac(1, 100), zeros, n);
    REQUIRE(poly.size() == n + 1);
    CHECK(poly[n] != 0);
  }
}

TEST_CASE("numeric integration stays on the closed form") {
  SUBCASE("zero end time returns the initial state") {
    SpreadModel model = single_method(frac(1, 100));
    auto trajectory = integrate_rk4(model, 0.0, 0.001);
    REQUIRE(trajectory.size() == 1);
    CHECK(trajectory[0].t == 0.0);
    CHECK(trajectory[0].p[0][1] == 0.0);
  }
  SUBCASE("zero rate freezes the first level and grows the zeroth with slope one") {
    SpreadModel model = single_method(Rat(0), 4, {Rat(0), frac(1, 3), Rat(0), Rat(0), Rat(0)});
    auto trajectory = integrate_rk4(model, 2.0, 0.5);
    const SpreadState& last = trajectory.back();
    CHECK(last.p[0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(last.p[0][0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(last.any_out_of_range);  // the zeroth level has left [0,1]
  }
  SUBCASE("fourth-order agreement with the exact polynomials") {
    SpreadModel model = single_method(frac(1, 100));
    auto trajectory = integrate_rk4(model, 10.0, 0.001);
    const SpreadState& last = trajectory.back();
    for (unsigned n = 0; n <= 10; ++n) {
      const double exact =
          to_double(probability_closed_form(model, 0, n, Rat(10)));
      CHECK(std::abs(last.p[0][n] - exact) < 1e-9);
    }
  }
  SUBCASE("early states carry no out-of-range flags") {
    SpreadModel model = single_method(frac(1, 100));
    auto trajectory = integrate_rk4(model, 0.5, 0.1);
    for (const SpreadState& s : trajectory) CHECK_FALSE(s.any_out_of_range);
  }
}

TEST_CASE("expected spread sums n times the probabilities") {
  SUBCASE("all mass at zero receivers") {
    SpreadModel model = single_method(Rat(0), 3, {Rat(1), Rat(0), Rat(0), Rat(0)});
    CHECK(expected_spread(model, 0, Rat(5)) == Rat(0));
  }
  SUBCASE("a frozen single receiver") {
    SpreadModel model = single_method(Rat(0), 3, {Rat(0), Rat(1), Rat(0), Rat(0)});
    CHECK(expected_spread(model, 0, Rat(7)) == Rat(1));
  }
  SUBCASE("two levels accumulate 11/100 at t = 10") {
    SpreadModel model = single_method(frac(1, 100), 2);
    CHECK(expected_spread(model, 0, Rat(10)) == frac(11, 100));
  }
}

TEST_CASE("sawtooth rate values and period") {
  CHECK(sawtooth_rate(Rat(4)) == frac(1, 100));
  CHECK(sawtooth_rate(frac(9, 2)) == frac(1, 200));
  CHECK(sawtooth_rate(frac(49, 10)) == frac(7, 1000));
  for (long num = 0; num <= 30; ++num) {
    const Rat x = frac(num, 7);
    CHECK(sawtooth_rate(x + frac(1, 3)) == sawtooth_rate(x));
  }
}

TEST_CASE("higher rates spread strictly faster from a cold start") {
  std::vector<Rat> zeros(11, Rat(0));
  std::vector<Rat> gammas = {frac(1, 200), frac(7, 1000), frac(1, 100), frac(1, 10)};
  for (unsigned n = 1; n <= 6; ++n)
    for (std::size_t i = 0; i + 1 < gammas.size(); ++i)
      for (const Rat& t : {frac(1, 2), Rat(1), Rat(10)}) {
        Rat lo = [&] {
          Rat acc(0);
          for (auto c = probability_polynomial(gammas[i], zeros, n); !c.empty();
               c.pop_back())
            acc = acc * t + c.back();
          return acc;
        }();
        Rat hi = [&] {
          Rat acc(0);
          for (auto c = probability_polynomial(gammas[i + 1], zeros, n); !c.empty();
               c.pop_back())
            acc = acc * t + c.back();
          return acc;
        }();
        CHECK(lo < hi);
      }
}

TEST_CASE("rate tables act as single-dimension observers") {
  SpreadModel a = make_spread_model({"book", "web"}, {Rat(0), Rat(1)},
                                    {frac(1, 100), frac(1, 200)}, 5, Rat(0), Rat(10), {});
  SpreadModel b = make_spread_model({"book", "web"}, {Rat(0), Rat(1)},
                                    {frac(1, 200), frac(7, 1000)}, 5, Rat(0), Rat(10), {});

  SUBCASE("meet and join act pointwise on the rates") {
    SpreadModel low = meet_models(a, b);
    CHECK(low.rates[0] == frac(1, 200));
    CHECK(low.rates[1] == frac(1, 200));
    SpreadModel high = join_models(a, b);
    CHECK(high.rates[0] == frac(1, 100));
    CHECK(high.rates[1] == frac(7, 1000));
  }
  SUBCASE("bridging commutes with the observer operations") {
    CHECK(rate_observer(meet_models(a, b)) == meet(rate_observer(a), rate_observer(b)));
    CHECK(rate_observer(join_models(a, b)) == join(rate_observer(a), rate_observer(b)));
  }
  SUBCASE("meeting a model with itself changes nothing") {
    CHECK(meet_models(a, a).rates == a.rates);
  }
  SUBCASE("different method lists are rejected") {
    SpreadModel c = make_spread_model({"tv"}, {Rat(0)}, {frac(1, 100)}, 5, Rat(0),
                                      Rat(10), {});
    CHECK_THROWS_WITH_AS(meet_models(a, c), doctest::Contains("MethodSetMismatch"), Error);
  }
}

TEST_CASE("cyclic scenario construction") {
  ShiftScenario scenario = build_shift_scenario_finite(2, frac(1, 2), 10);
  CHECK(scenario.topology.opens.size() == 4);  // two representatives plus top and bottom
  CHECK(validate_topology(scenario.topology).valid());
  CHECK(scenario.topology.designated ==
        Observer::constant(scenario.ground, frac(1, 10)));
  CHECK_THROWS_AS(build_shift_scenario_finite(1, frac(1, 2)), Error);
  CHECK_THROWS_WITH_AS(build_shift_scenario_finite(3, Rat(1)),
                       doctest::Contains("ValueOutOfRange"), Error);
}

TEST_CASE("windowed scenario construction and pullback closure") {
  WindowedScenario scenario = build_shift_scenario_windowed(1, 6, Rat(1));
  CHECK(scenario.ground->points.size() == 13);
  CHECK(validate_two_level_topology(scenario.topology).valid());
  CHECK(scenario.target_log() == doctest::Approx(std::log(2.0)));

  // Composition with the shift keeps every member inside the family, the
  // window analogue of the index-raising identity for the rate maps.
  const TwoLevelFamily& family = scenario.topology.family;
  std::vector<Observer> members = scenario.catalog[1].members;
  for (int iter = 0; iter < 8; ++iter) {
    std::vector<Observer> next;
    for (const Observer& m : members) {
      Observer pulled = compose(m, scenario.shift);
      CHECK(family.contains(pulled));
      next.push_back(std::move(pulled));
    }
    members = std::move(next);
  }

  CHECK_THROWS_WITH_AS(build_shift_scenario_windowed(6, 6, Rat(1)),
                       doctest::Contains("WindowTooSmall"), Error);
}

TEST_CASE("figure data") {
  SpreadModel model = make_spread_model(
      {"m4", "m45", "m49"}, {Rat(4), frac(9, 2), frac(49, 10)},
      {sawtooth_rate(Rat(4)), sawtooth_rate(frac(9, 2)), sawtooth_rate(frac(49, 10))}, 10,
      Rat(0), Rat(10), {});
  std::vector<Rat> t_grid, x_grid;
  for (int i = 0; i <= 10; ++i) t_grid.push_back(Rat(i));
  for (int i = 0; i <= 30; ++i) x_grid.push_back(frac(i, 6));
  FigureBundle bundle = emit_figure_data(model, {0, 1, 2}, 2, t_grid, x_grid);

  SUBCASE("rate rows repeat with period 1/3 of x") {
    // x-grid step is 1/6, so rows two apart carry equal rates.
    std::vector<std::string> lines;
    std::istringstream in(bundle.rate_csv);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 32);
    auto rate_of = [&](std::size_t row) {
      return lines[row].substr(lines[row].find(',') + 1);
    };
    for (std::size_t row = 1; row + 2 < lines.size(); ++row)
      CHECK(rate_of(row) == rate_of(row + 2));
  }
  SUBCASE("curves start together and order by rate afterwards") {
    // gamma(4) > gamma(4.9) > gamma(4.5), so the level-2 curves order the
    // same way for positive times.
    for (const Rat& t : t_grid) {
      const Rat p4 = probability_closed_form(model, 0, 2, t);
      const Rat p45 = probability_closed_form(model, 1, 2, t);
      const Rat p49 = probability_closed_form(model, 2, 2, t);
      if (t == 0) {
        CHECK(p4 == 0);
        CHECK(p45 == 0);
        CHECK(p49 == 0);
      } else {
        CHECK(p4 > p49);
        CHECK(p49 > p45);
      }
    }
    CHECK(bundle.curves_csv.substr(0, 2) == "t,");
  }
  SUBCASE("surface rows cover the grid") {
    std::size_t rows = 0;
    for (char c : bundle.surface_csv)
      if (c == '\n') ++rows;
    CHECK(rows == 1 + x_grid.size() * t_grid.size());
  }
}
