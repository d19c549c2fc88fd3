#include "infotop/spread.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "infotop/error.hpp"

namespace infotop {

std::size_t SpreadModel::method_index(const std::string& name) const {
  auto it = std::find(methods.begin(), methods.end(), name);
  if (it == methods.end())
    raise(ErrorCode::UnresolvedReference, "unknown method '" + name + "'");
  return static_cast<std::size_t>(it - methods.begin());
}

SpreadModel make_spread_model(std::vector<std::string> methods, std::vector<Rat> tags,
                              std::vector<Rat> rates, int population_cap, Rat t_lo,
                              Rat t_hi, std::vector<std::vector<Rat>> initial) {
  SpreadModel model;
  if (methods.empty()) raise(ErrorCode::InvalidArgument, "model without methods");
  std::set<std::string> unique(methods.begin(), methods.end());
  if (unique.size() != methods.size())
    raise(ErrorCode::InvalidArgument, "duplicate method identifier");
  if (tags.size() != methods.size() || rates.size() != methods.size())
    raise(ErrorCode::InvalidArgument, "tags/rates do not match the method list");
  if (population_cap < 1) raise(ErrorCode::InvalidArgument, "population cap must be >= 1");
  if (!(t_lo <= 0 && 0 <= t_hi))
    raise(ErrorCode::InvalidArgument, "time interval must contain 0");
  for (const Rat& g : rates)
    if (g < 0 || g > 1)
      raise(ErrorCode::ValueOutOfRange, "rate " + rational_to_string(g) + " outside [0,1]");
  if (initial.empty())
    initial.assign(methods.size(), std::vector<Rat>(population_cap + 1, Rat(0)));
  if (initial.size() != methods.size())
    raise(ErrorCode::InvalidArgument, "initial tables do not match the method list");
  for (const auto& row : initial) {
    if (row.size() != static_cast<std::size_t>(population_cap) + 1)
      raise(ErrorCode::InvalidArgument, "initial table must have M+1 entries");
    for (const Rat& v : row)
      if (v < 0 || v > 1)
        raise(ErrorCode::ValueOutOfRange, "initial probability outside [0,1]");
  }
  model.methods = std::move(methods);
  model.tags = std::move(tags);
  model.rates = std::move(rates);
  model.population_cap = population_cap;
  model.t_lo = std::move(t_lo);
  model.t_hi = std::move(t_hi);
  model.initial = std::move(initial);
  return model;
}

std::vector<Rat> probability_polynomial(const Rat& gamma, const std::vector<Rat>& initial,
                                        std::size_t n) {
  if (n >= initial.size())
    raise(ErrorCode::IndexOutOfRange, "n exceeds the population cap");
  if (n == 0) return {initial[0], Rat(1) - gamma};
  if (n == 1) return {initial[1], gamma};
  std::vector<Rat> prev = probability_polynomial(gamma, initial, n - 1);
  std::vector<Rat> coeffs(prev.size() + 1, Rat(0));
  coeffs[0] = initial[n];
  const Rat factor = Rat(static_cast<long>(n) - 1) * gamma;
  for (std::size_t j = 0; j < prev.size(); ++j) {
    coeffs[j + 1] = factor * prev[j] / Rat(static_cast<long>(j) + 1);
    coeffs[j + 1].canonicalize();
  }
  return coeffs;
}

namespace {

Rat eval_poly(const std::vector<Rat>& coeffs, const Rat& t) {
  Rat acc(0);
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    acc = acc * t + coeffs[j];
    acc.canonicalize();
  }
  return acc;
}

void require_time(const SpreadModel& model, const Rat& t) {
  if (t < model.t_lo || t > model.t_hi)
    raise(ErrorCode::ValueOutOfRange, "time outside the model interval");
}

}  // namespace

Rat probability_closed_form(const SpreadModel& model, std::size_t method, std::size_t n,
                            const Rat& t) {
  if (method >= model.methods.size())
    raise(ErrorCode::IndexOutOfRange, "method index out of range");
  require_time(model, t);
  return eval_poly(probability_polynomial(model.rates[method], model.initial[method], n), t);
}

std::vector<SpreadState> integrate_rk4(const SpreadModel& model, double t_end, double step) {
  if (step <= 0) raise(ErrorCode::InvalidArgument, "step must be positive");
  if (t_end < 0) raise(ErrorCode::InvalidArgument, "integration runs forward from 0");

  const std::size_t m = model.methods.size();
  const std::size_t dim = static_cast<std::size_t>(model.population_cap) + 1;
  std::vector<std::vector<double>> y(m, std::vector<double>(dim));
  std::vector<double> gamma(m);
  for (std::size_t i = 0; i < m; ++i) {
    gamma[i] = to_double(model.rates[i]);
    for (std::size_t n = 0; n < dim; ++n) y[i][n] = to_double(model.initial[i][n]);
  }

  auto rhs = [&](std::size_t i, const std::vector<double>& state, std::vector<double>& out) {
    out[0] = 1.0 - gamma[i];
    if (dim > 1) out[1] = gamma[i];
    for (std::size_t n = 2; n < dim; ++n)
      out[n] = static_cast<double>(n - 1) * gamma[i] * state[n - 1];
  };

  auto snapshot = [&](double t) {
    SpreadState state;
    state.t = t;
    state.p = y;
    state.out_of_range.assign(m, std::vector<bool>(dim, false));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t n = 0; n < dim; ++n)
        if (y[i][n] < 0.0 || y[i][n] > 1.0) {
          state.out_of_range[i][n] = true;
          state.any_out_of_range = true;
        }
    return state;
  };

  std::vector<SpreadState> trajectory;
  trajectory.push_back(snapshot(0.0));
  double t = 0.0;
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  while (t < t_end - 1e-15) {
    const double h = std::min(step, t_end - t);
    for (std::size_t i = 0; i < m; ++i) {
      auto& yi = y[i];
      rhs(i, yi, k1);
      for (std::size_t n = 0; n < dim; ++n) tmp[n] = yi[n] + 0.5 * h * k1[n];
      rhs(i, tmp, k2);
      for (std::size_t n = 0; n < dim; ++n) tmp[n] = yi[n] + 0.5 * h * k2[n];
      rhs(i, tmp, k3);
      for (std::size_t n = 0; n < dim; ++n) tmp[n] = yi[n] + h * k3[n];
      rhs(i, tmp, k4);
      for (std::size_t n = 0; n < dim; ++n)
        yi[n] += h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
    }
    t += h;
    trajectory.push_back(snapshot(t));
  }
  return trajectory;
}

Rat expected_spread(const SpreadModel& model, std::size_t method, const Rat& t) {
  if (method >= model.methods.size())
    raise(ErrorCode::IndexOutOfRange, "method index out of range");
  require_time(model, t);
  Rat acc(0);
  for (int n = 1; n <= model.population_cap; ++n) {
    acc += Rat(n) * probability_closed_form(model, method, static_cast<std::size_t>(n), t);
    acc.canonicalize();
  }
  return acc;
}

Rat sawtooth_rate(const Rat& x) {
  Rat value = Rat(1) + Rat(3) * x + Rat(floor_rat(Rat(-3) * x));
  value /= 100;
  value.canonicalize();
  return value;
}

Observer rate_observer(const SpreadModel& model) {
  GroundPtr ground = make_ground(model.methods, {"rate"});
  return Observer(ground, model.rates);
}

namespace {

void require_compatible(const SpreadModel& a, const SpreadModel& b) {
  if (a.methods != b.methods)
    raise(ErrorCode::MethodSetMismatch, "models are defined on different method lists");
  if (a.tags != b.tags)
    raise(ErrorCode::MethodSetMismatch, "models tag their methods differently");
  if (a.population_cap != b.population_cap || !(a.t_lo == b.t_lo) || !(a.t_hi == b.t_hi) ||
      a.initial != b.initial)
    raise(ErrorCode::InvalidArgument,
          "models must agree on cap, interval and initial tables");
}

SpreadModel combine(const SpreadModel& a, const SpreadModel& b, bool take_min) {
  require_compatible(a, b);
  SpreadModel out = a;
  for (std::size_t i = 0; i < out.rates.size(); ++i)
    out.rates[i] = take_min ? rat_min(a.rates[i], b.rates[i]) : rat_max(a.rates[i], b.rates[i]);
  return out;
}

}  // namespace

SpreadModel meet_models(const SpreadModel& a, const SpreadModel& b) {
  return combine(a, b, true);
}

SpreadModel join_models(const SpreadModel& a, const SpreadModel& b) {
  return combine(a, b, false);
}

ShiftScenario build_shift_scenario_finite(unsigned k, const Rat& default_level,
                                          int population_cap) {
  if (k < 2) raise(ErrorCode::InvalidArgument, "the cyclic scenario needs k >= 2");
  if (default_level < 0 || !(default_level < 1))
    raise(ErrorCode::ValueOutOfRange, "default level must sit in [0,1)");
  if (population_cap < 1) raise(ErrorCode::InvalidArgument, "population cap must be >= 1");

  ShiftScenario scenario;
  std::vector<std::string> points;
  for (unsigned i = 1; i <= k; ++i) points.push_back("x" + std::to_string(i));
  scenario.ground = make_ground(points, {"rate"});

  const Rat mu = Rat(1, population_cap);
  Rat off = mu * default_level;
  off.canonicalize();
  const Observer designated = Observer::constant(scenario.ground, mu);
  const Observer least = Observer::constant(scenario.ground, off);
  std::vector<Observer> reps;
  for (unsigned i = 0; i < k; ++i) {
    std::vector<Rat> values(k, off);
    values[i] = mu;
    reps.emplace_back(scenario.ground, std::move(values));
  }

  std::vector<Observer> opens;
  opens.push_back(designated);
  opens.insert(opens.end(), reps.begin(), reps.end());
  opens.push_back(least);
  // The join of two representatives leaves the materialized slice, so the
  // universe stays open-world.
  scenario.topology.universe = observer_universe(opens, ClosureMode::OpenWorld);
  scenario.topology.opens = opens;
  scenario.topology.designated = designated;
  scenario.topology.least = least;

  std::vector<std::size_t> image(k);
  for (unsigned i = 0; i < k; ++i) image[i] = (i + 1) % k;
  scenario.shift = PointMap(scenario.ground, scenario.ground, std::move(image));

  CoverContext<Observer> ctx = cover_context(scenario.topology);
  scenario.catalog.push_back(make_cover(designated, {designated}, ctx));
  scenario.catalog.push_back(make_cover(designated, opens, ctx));
  for (unsigned i = 0; i < k; ++i)
    scenario.catalog.push_back(make_cover(designated, {designated, reps[i]}, ctx));
  return scenario;
}

double WindowedScenario::target_log() const { return std::log(2.0 * k); }

WindowedScenario build_shift_scenario_windowed(unsigned k, unsigned window, const Rat& theta) {
  if (window <= k)
    raise(ErrorCode::WindowTooSmall, "the window must exceed the core radius k");
  if (!(theta > 0) || theta > 1)
    raise(ErrorCode::ValueOutOfRange, "background level must sit in (0,1]");

  const int w = static_cast<int>(window);
  std::vector<std::string> points;
  for (int i = -w; i <= w; ++i) points.push_back("x" + std::to_string(i));
  GroundPtr ground = make_ground(points, {"rate"});
  const std::size_t count = points.size();

  // Members may differ from the background anywhere except the absorbing
  // right boundary, so pullbacks stay inside the family.
  std::vector<std::size_t> allowed;
  for (std::size_t i = 0; i + 1 < count; ++i) allowed.push_back(i);
  WindowedScenario scenario{ground,
                            TwoLevelTopology(TwoLevelFamily(ground, theta, Rat(0), allowed)),
                            PointMap(),
                            {},
                            k,
                            window};

  std::vector<std::size_t> image(count);
  for (std::size_t i = 0; i + 1 < count; ++i) image[i] = i + 1;
  image[count - 1] = count - 1;
  scenario.shift = PointMap(scenario.ground, scenario.ground, std::move(image));

  CoverContext<Observer> ctx = cover_context(scenario.topology);
  const Observer designated = scenario.topology.designated;
  scenario.catalog.push_back(make_cover(designated, {designated}, ctx));

  // Co-singleton cover on the radius-k core: one member per core point,
  // sitting at the inside level everywhere on the core except that point.
  std::vector<std::size_t> core;
  for (int i = -static_cast<int>(k); i <= static_cast<int>(k); ++i)
    core.push_back(static_cast<std::size_t>(i + w));
  std::vector<Observer> co_singletons;
  for (std::size_t skip : core) {
    std::vector<std::size_t> inside;
    for (std::size_t p : core)
      if (p != skip) inside.push_back(p);
    co_singletons.push_back(scenario.topology.family.member_for(inside));
  }
  scenario.catalog.push_back(make_cover(designated, co_singletons, ctx));
  return scenario;
}

FigureBundle emit_figure_data(const SpreadModel& model, const std::vector<std::size_t>& methods,
                              std::size_t n, const std::vector<Rat>& t_grid,
                              const std::vector<Rat>& x_grid) {
  FigureBundle bundle;

  std::ostringstream rate;
  rate << "x,rate\n";
  for (const Rat& x : x_grid)
    rate << format_decimal(x) << "," << format_decimal(sawtooth_rate(x)) << "\n";
  bundle.rate_csv = rate.str();

  std::ostringstream curves;
  curves << "t";
  for (std::size_t m : methods) {
    if (m >= model.methods.size())
      raise(ErrorCode::IndexOutOfRange, "method index out of range");
    curves << ",p" << n << "_" << model.methods[m];
  }
  curves << "\n";
  for (const Rat& t : t_grid) {
    curves << format_decimal(t);
    for (std::size_t m : methods)
      curves << "," << format_decimal(probability_closed_form(model, m, n, t));
    curves << "\n";
  }
  bundle.curves_csv = curves.str();

  // The surface runs over arbitrary x with the sawtooth rate and zero
  // initial probabilities.
  const std::vector<Rat> zero_init(static_cast<std::size_t>(model.population_cap) + 1, Rat(0));
  std::ostringstream surface;
  surface << "x,t,p" << n << "\n";
  for (const Rat& x : x_grid) {
    const std::vector<Rat> poly = probability_polynomial(sawtooth_rate(x), zero_init, n);
    for (const Rat& t : t_grid) {
      Rat acc(0);
      for (std::size_t j = poly.size(); j-- > 0;) {
        acc = acc * t + poly[j];
        acc.canonicalize();
      }
      surface << format_decimal(x) << "," << format_decimal(t) << "," << format_decimal(acc)
              << "\n";
    }
  }
  bundle.surface_csv = surface.str();
  return bundle;
}

}  // namespace infotop
