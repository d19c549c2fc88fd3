#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infotop/covers.hpp"
#include "infotop/rational.hpp"
#include "infotop/spaces.hpp"

namespace infotop {

// The knowledge-spread model: per-method transmission rates, a population
// cap M, a time interval containing 0, and initial probabilities p_n(0) for
// n = 0..M.
struct SpreadModel {
  std::vector<std::string> methods;
  std::vector<Rat> tags;   // numeric tag per method (feeds the sawtooth rate)
  std::vector<Rat> rates;  // gamma per method, in [0,1]
  int population_cap = 1;  // M
  Rat t_lo, t_hi;
  std::vector<std::vector<Rat>> initial;  // per method, size M+1

  std::size_t method_index(const std::string& name) const;
};

SpreadModel make_spread_model(std::vector<std::string> methods, std::vector<Rat> tags,
                              std::vector<Rat> rates, int population_cap, Rat t_lo,
                              Rat t_hi, std::vector<std::vector<Rat>> initial);

// One sampled instant of the numeric trajectory. Probabilities outside
// [0,1] are flagged, never clamped: the model is linear in t and leaves the
// unit interval for large times.
struct SpreadState {
  double t = 0.0;
  std::vector<std::vector<double>> p;        // per method, size M+1
  std::vector<std::vector<bool>> out_of_range;
  bool any_out_of_range = false;
};

// Exact polynomial solution of dp_n/dt = (n-1) * gamma * p_{n-1} (n >= 2),
// dp_1/dt = gamma, dp_0/dt = 1 - gamma; coefficient c[j] multiplies t^j.
std::vector<Rat> probability_polynomial(const Rat& gamma, const std::vector<Rat>& initial,
                                        std::size_t n);

Rat probability_closed_form(const SpreadModel& model, std::size_t method, std::size_t n,
                            const Rat& t);

// Fixed-step fourth-order integration of all methods, sampled at every step.
std::vector<SpreadState> integrate_rk4(const SpreadModel& model, double t_end, double step);

// Expected number of receivers at time t: sum of n * p_n(t), exact.
Rat expected_spread(const SpreadModel& model, std::size_t method, const Rat& t);

// (1 + 3x + floor(-3x)) / 100; the bracket is read as the floor function,
// which reproduces the sawtooth with period 1/3 and peak 1/100.
Rat sawtooth_rate(const Rat& x);

// The rate table as a single-dimension observer on the method set, so the
// algebra, topology and entropy machinery applies to rate-level systems
// unchanged.
Observer rate_observer(const SpreadModel& model);

// Pointwise min/max of the rate tables; every other field must agree.
SpreadModel meet_models(const SpreadModel& a, const SpreadModel& b);
SpreadModel join_models(const SpreadModel& a, const SpreadModel& b);

// Cyclic-shift scenario on k methods. The open family holds one
// representative per method (full rate at the method, `default_level`
// elsewhere, all scaled by 1/M), the constant designated element and the
// constant least element. The catalog lists covers that contain the
// designated element, and is closed under composition with the shift.
struct ShiftScenario {
  GroundPtr ground;
  Topology<Observer> topology;
  PointMap shift;
  std::vector<Cover<Observer>> catalog;
};

ShiftScenario build_shift_scenario_finite(unsigned k, const Rat& default_level,
                                          int population_cap = 10);

// Truncated two-sided window scenario: points x_{-window}..x_{window}, a
// two-level family over the non-absorbing points with background theta, the
// boundary-absorbing shift, and a catalog holding the trivial cover and the
// co-singleton cover on the radius-k core.
struct WindowedScenario {
  GroundPtr ground;
  TwoLevelTopology topology;
  PointMap shift;
  std::vector<Cover<Observer>> catalog;
  unsigned k = 1;
  unsigned window = 2;

  double target_log() const;  // log(2k), the value the trace is compared against
};

WindowedScenario build_shift_scenario_windowed(unsigned k, unsigned window, const Rat& theta);

// CSV bundles for the three standard figures: the sawtooth rate over x, the
// p_n curves over t for chosen methods, and the p_n surface over (x, t) with
// zero initial probabilities.
struct FigureBundle {
  std::string rate_csv;     // x,rate
  std::string curves_csv;   // t,<method tags...>
  std::string surface_csv;  // x,t,value
};

FigureBundle emit_figure_data(const SpreadModel& model, const std::vector<std::size_t>& methods,
                              std::size_t n, const std::vector<Rat>& t_grid,
                              const std::vector<Rat>& x_grid);

}  // namespace infotop
