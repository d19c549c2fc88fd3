#pragma once

// Shared fixtures for the test suites: the six-student three-lesson table
// and a few small helper builders.

#include <array>
#include <vector>

#include "infotop/observer.hpp"
#include "infotop/topology.hpp"

namespace fixtures {

using infotop::GroundPtr;
using infotop::Observer;
using infotop::Rat;

inline const std::array<std::array<int, 3>, 6>& table1_marks() {
  static const std::array<std::array<int, 3>, 6> marks = {{
      {95, 80, 85},
      {96, 93, 75},
      {99, 87, 90},
      {88, 87, 50},
      {88, 85, 65},
      {91, 88, 91},
  }};
  return marks;
}

inline std::vector<std::string> table1_points() {
  return {"x1", "x2", "x3", "x4", "x5", "x6"};
}

// The whole table as one three-dimensional observer.
inline Observer table1_observer(const GroundPtr& ground) {
  std::vector<Rat> values;
  for (const auto& row : table1_marks())
    for (int mark : row) values.push_back(infotop::frac(mark, 100));
  return Observer(ground, std::move(values));
}

inline GroundPtr table1_ground() {
  return infotop::make_ground(table1_points(), {"T", "A", "D"});
}

// One lesson column as a one-dimensional observer on a shared ground.
inline Observer table1_column(const GroundPtr& ground, std::size_t column) {
  std::vector<Rat> values;
  for (const auto& row : table1_marks()) values.push_back(infotop::frac(row[column], 100));
  return Observer(ground, std::move(values));
}

inline GroundPtr column_ground() { return infotop::make_ground(table1_points(), {"m"}); }

// Scalar topology used across the examples: universe {0, 1/4, 1/2, 7/10, 1},
// opens {0, 1/2, 1}.
inline infotop::Topology<Rat> scalar_example_topology() {
  infotop::Topology<Rat> t;
  t.universe = infotop::scalar_universe({Rat(0), Rat(1, 4), Rat(1, 2), Rat(7, 10), Rat(1)});
  t.opens = {Rat(0), Rat(1, 2), Rat(1)};
  t.designated = Rat(1);
  t.least = Rat(0);
  return t;
}

}  // namespace fixtures
