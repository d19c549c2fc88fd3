// Command-line front end: parse definition files, run structure checks and
// scenarios, print deterministic reports, emit CSV artifacts.
//
// Exit status: 0 success, 1 a checked property failed, 2 usage/parse errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "infotop/entropy.hpp"
#include "infotop/sysdef.hpp"

using namespace infotop;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) raise(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name);
  out << content;
  std::cout << "wrote " << dir << "/" << name << "\n";
}

const char* status_word(AxiomStatus status) {
  switch (status) {
    case AxiomStatus::Holds: return "PASS";
    case AxiomStatus::HoldsSampled: return "PASS (sampled)";
    case AxiomStatus::Fails: return "FAIL";
  }
  return "?";
}

std::string render_observer(const BuiltSystem& sys, const Observer& obs) {
  for (std::size_t i = 0; i < sys.observers.size(); ++i)
    if (sys.observers[i] == obs) return sys.observer_names[i];
  std::string out = "(";
  const auto& ground = *obs.ground();
  for (std::size_t p = 0; p < ground.points.size(); ++p)
    for (std::size_t d = 0; d < ground.dims.size(); ++d) {
      if (p + d) out += " ";
      out += rational_to_string(obs.at(p, d));
    }
  return out + ")";
}

struct Shared {
  std::string def_path;
  std::uint64_t seed = 0;
  std::size_t steps = 8;
  std::size_t size_cap = 20000;
  std::string output;
  std::string step = "1/1000";
};

int print_axiom_report(const AxiomReport<Observer>& report) {
  for (const auto* verdict : report.verdicts())
    std::cout << verdict->name << ": " << status_word(verdict->status) << "\n";
  std::cout << "mode: " << (report.exhaustive ? "exhaustive" : "sampled") << " ("
            << report.triples_checked << " triples, seed " << report.seed << ")\n";
  return report.all_hold() ? kOk : kCheckFailed;
}

int cmd_check_axioms(const Shared& shared, const std::string& topology,
                     std::uint64_t budget) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  AlgebraUniverse<Observer> universe;
  if (!topology.empty()) {
    BuiltTopology top = build_topology(def, sys, topology);
    if (top.symbolic())
      raise(ErrorCode::InvalidArgument,
            "axiom checks need a finite universe; '" + topology + "' is symbolic");
    universe = top.finite->universe;
  } else {
    universe = closed_universe_from_seed(sys.observers, observer_universe({}), 4096);
  }
  std::cout << "universe: " << universe.elements.size() << " elements\n";
  return print_axiom_report(check_axioms(universe, budget, shared.seed));
}

int print_topology_report(const TopologyReport& report) {
  for (const auto& check : report.checks) {
    std::cout << check.name << ": " << status_word(check.status);
    if (!check.detail.empty()) std::cout << " -- " << check.detail;
    std::cout << "\n";
  }
  std::cout << "subsets checked: " << report.subsets_checked
            << (report.subsets_exhaustive ? " (exhaustive)" : " (sampled/symbolic)") << "\n";
  return report.valid() ? kOk : kCheckFailed;
}

int cmd_validate(const Shared& shared, const std::string& name) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  BuiltTopology top = build_topology(def, sys, name);
  ValidateOptions options;
  options.seed = shared.seed;
  TopologyReport report = top.symbolic() ? validate_scale_topology(*top.scale)
                                         : validate_topology(*top.finite, options);
  return print_topology_report(report);
}

int cmd_interior(const Shared& shared, const std::string& topology,
                 const std::string& observer) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  BuiltTopology top = build_topology(def, sys, topology);
  if (top.symbolic())
    raise(ErrorCode::InvalidArgument, "interior needs a finite topology");
  std::vector<Observer> interior = interior_of(sys.observer(observer), *top.finite);
  std::cout << "interior of " << observer << ":";
  for (const Observer& g : interior) std::cout << " " << render_observer(sys, g);
  std::cout << "\n";
  return kOk;
}

int cmd_is_open(const Shared& shared, const std::string& topology,
                const std::string& observer) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  BuiltTopology top = build_topology(def, sys, topology);
  if (top.symbolic()) {
    ScaleMembership m = match_scale_member(top.scale->family, sys.observer(observer));
    std::cout << observer << " open: " << (m.member ? "yes" : "no") << "\n";
    return kOk;
  }
  OpennessCertificate<Observer> cert = is_open(sys.observer(observer), *top.finite);
  std::cout << observer << " open: " << (cert.open ? "yes" : "no")
            << " (interior membership agrees)\n";
  return kOk;
}

int cmd_is_closed(const Shared& shared, const std::string& topology,
                  const std::string& observer) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  BuiltTopology top = build_topology(def, sys, topology);
  if (top.symbolic())
    raise(ErrorCode::InvalidArgument, "closedness needs a finite topology");
  const bool closed = is_closed(sys.observer(observer), *top.finite);
  std::cout << observer << " closed: " << (closed ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_continuity(const Shared& shared, const std::string& map_name,
                   const std::string& source, const std::string& target) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  BuiltTopology yside = build_topology(def, sys, source);
  BuiltTopology xside = build_topology(def, sys, target);
  if (yside.symbolic() || xside.symbolic())
    raise(ErrorCode::InvalidArgument, "continuity checks need finite topologies");
  ContinuityReport report =
      continuity_check(build_map(def, sys, map_name), *yside.finite, *xside.finite);
  for (const auto& check : report.checks) {
    std::cout << check.name << ": " << status_word(check.status);
    if (!check.detail.empty() && !check.holds()) std::cout << " -- " << check.detail;
    std::cout << "\n";
  }
  std::cout << "continuous: " << (report.continuous() ? "yes" : "no") << "\n";
  return report.continuous() ? kOk : kCheckFailed;
}

int cmd_product(const Shared& shared, const std::string& first, const std::string& second,
                bool check_compact) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  BuiltTopology t1 = build_topology(def, sys, first);
  BuiltTopology t2 = build_topology(def, sys, second);
  if (t1.symbolic() || t2.symbolic())
    raise(ErrorCode::InvalidArgument, "products need finite topologies");
  ProductSpace product = product_space({*t1.finite, *t2.finite});
  std::cout << "product points:";
  for (const auto& p : product.point_tuples) std::cout << " " << p;
  std::cout << "\nopens: " << product.topology.opens.size() << "\n";
  int status = print_topology_report(validate_topology(product.topology));
  if (check_compact) {
    CompactnessReport compact =
        compactness_check(product.topology.designated, product.topology);
    std::cout << "designated compact: " << (compact.compact ? "yes" : "no") << " -- "
              << compact.reasoning << "\n";
  }
  return status;
}

int cmd_compact(const Shared& shared, const std::string& topology,
                const std::string& observer) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  BuiltTopology top = build_topology(def, sys, topology);
  CompactnessReport report;
  std::string label = observer.empty() ? "F" : observer;
  if (top.symbolic()) {
    Observer target = observer.empty() ? top.scale->designated : sys.observer(observer);
    report = compactness_check(target, *top.scale);
  } else {
    Observer target = observer.empty() ? top.finite->designated : sys.observer(observer);
    report = compactness_check(target, *top.finite);
  }
  std::cout << label << " compact: " << (report.compact ? "yes" : "no") << " -- "
            << report.reasoning << "\n";
  return kOk;
}

int cmd_cover(const Shared& shared, const std::string& name) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  const CoverDef& cd = def.cover(name);
  BuiltTopology top = build_topology(def, sys, cd.space);
  Cover<Observer> cover = build_cover(def, sys, name, top);
  std::cout << "cover " << name << ": " << cover.members.size() << " members, witness "
            << render_observer(sys, cover.witness) << "\n";
  return kOk;
}

int cmd_min_subcover(const Shared& shared, const std::string& name) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  const CoverDef& cd = def.cover(name);
  BuiltTopology top = build_topology(def, sys, cd.space);
  Cover<Observer> cover = build_cover(def, sys, name, top);
  MinSubcoverResult min = min_subcover(cover, top.context());
  std::cout << "minimal subcover: " << min.count << " members:";
  for (std::size_t i : min.member_indices)
    std::cout << " " << render_observer(sys, cover.members[i]);
  std::cout << "\n";
  return kOk;
}

struct ScenarioObjects {
  CoverContext<Observer> ctx;
  PointMap shift;
  std::vector<Cover<Observer>> catalog;
  double target = -1.0;  // reference value for the windowed scenario
  std::string validation;
};

ScenarioObjects scenario_objects(const ScenarioDef& sc) {
  ScenarioObjects out;
  if (sc.kind == "finite-shift") {
    ShiftScenario scenario = build_shift_scenario_finite(sc.k, sc.level, sc.population_cap);
    TopologyReport report = validate_topology(scenario.topology);
    out.validation = report.valid() ? "valid" : "INVALID";
    out.ctx = cover_context(scenario.topology);
    out.shift = scenario.shift;
    out.catalog = scenario.catalog;
  } else {
    WindowedScenario scenario = build_shift_scenario_windowed(sc.k, sc.window, sc.theta);
    TopologyReport report = validate_two_level_topology(scenario.topology);
    out.validation = report.valid() ? "valid" : "INVALID";
    out.ctx = cover_context(scenario.topology);
    out.shift = scenario.shift;
    out.catalog = scenario.catalog;
    out.target = scenario.target_log();
  }
  return out;
}

void print_trace(const EntropyTrace& trace) {
  std::cout << trace_csv(trace);
  std::cout << "estimate " << format_decimal(trace.estimate) << "\n";
  if (trace.stabilized)
    std::cout << "joined cover stabilized at n=" << trace.stabilized_at
              << (trace.converged ? "" : " (prefix minimum still above the limit)") << "\n";
}

int cmd_entropy_trace(const Shared& shared, const std::string& scenario_name,
                      const std::string& cover_name, const std::string& map_name) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  EntropyTrace trace;
  if (!scenario_name.empty()) {
    ScenarioObjects objects = scenario_objects(def.scenario(scenario_name));
    CatalogEntropy result = catalog_entropy(pullback_along(objects.shift), objects.catalog,
                                            objects.ctx, shared.steps, shared.size_cap);
    trace = result.traces[result.best_cover];
  } else {
    if (cover_name.empty() || map_name.empty())
      raise(ErrorCode::InvalidArgument, "need --scenario, or --cover with --map");
    BuiltSystem sys = build_system(def);
    const CoverDef& cd = def.cover(cover_name);
    BuiltTopology top = build_topology(def, sys, cd.space);
    Cover<Observer> cover = build_cover(def, sys, cover_name, top);
    trace = entropy_trace(pullback_along(build_map(def, sys, map_name)), cover,
                          top.context(), shared.steps, shared.size_cap);
  }
  print_trace(trace);
  if (!shared.output.empty()) write_file(shared.output, "trace.csv", trace_csv(trace));
  return kOk;
}

int cmd_system_entropy(const Shared& shared, const std::string& scenario_name,
                       const std::string& top_name, const std::string& map_name,
                       const std::vector<std::string>& covers) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  CatalogEntropy result;
  if (!scenario_name.empty()) {
    ScenarioObjects objects = scenario_objects(def.scenario(scenario_name));
    result = catalog_entropy(pullback_along(objects.shift), objects.catalog, objects.ctx,
                             shared.steps, shared.size_cap);
  } else {
    if (top_name.empty() || map_name.empty() || covers.empty())
      raise(ErrorCode::InvalidArgument,
            "need --scenario, or --top with --map and --covers");
    BuiltSystem sys = build_system(def);
    BuiltTopology top = build_topology(def, sys, top_name);
    std::vector<Cover<Observer>> catalog;
    for (const auto& c : covers) catalog.push_back(build_cover(def, sys, c, top));
    result = catalog_entropy(pullback_along(build_map(def, sys, map_name)), catalog,
                             top.context(), shared.steps, shared.size_cap);
  }
  for (std::size_t i = 0; i < result.traces.size(); ++i)
    std::cout << "cover " << i << ": estimate "
              << format_decimal(result.traces[i].estimate) << "\n";
  std::cout << "estimate " << format_decimal(result.estimate)
            << " (catalog lower bound, best cover " << result.best_cover << ")\n";
  return kOk;
}

int cmd_conjugacy(const Shared& shared, const std::string& f_name,
                  const std::string& g_name, const std::string& h_name,
                  const std::string& xtop, const std::string& ytop,
                  const std::vector<std::string>& covers) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  BuiltSystem sys = build_system(def);
  BuiltTopology xside = build_topology(def, sys, xtop);
  BuiltTopology yside = build_topology(def, sys, ytop);
  if (xside.symbolic() || yside.symbolic())
    raise(ErrorCode::InvalidArgument, "conjugacy checks need finite topologies");
  std::vector<Cover<Observer>> catalog;
  for (const auto& c : covers) catalog.push_back(build_cover(def, sys, c, xside));
  ConjugacyReport report =
      conjugacy_check(build_map(def, sys, f_name), build_map(def, sys, g_name),
                      build_map(def, sys, h_name), *xside.finite, *yside.finite, catalog,
                      shared.steps, shared.size_cap);
  std::cout << "traces equal: " << (report.traces_equal ? "yes" : "no") << "\n";
  if (!report.detail.empty()) std::cout << report.detail << "\n";
  return report.traces_equal ? kOk : kCheckFailed;
}

int cmd_spread_closed_form(const Shared& shared, const std::string& spread_name,
                           const std::string& method, unsigned level,
                           const std::string& t_text) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  SpreadModel model = build_spread(def, spread_name);
  const Rat t = parse_rational(t_text);
  const Rat value = probability_closed_form(model, model.method_index(method), level, t);
  std::cout << "p_" << level << "(" << rational_to_string(t) << ") = "
            << rational_to_string(value) << " = " << format_decimal(value) << "\n";
  const Rat expected = expected_spread(model, model.method_index(method), t);
  std::cout << "expected receivers: " << rational_to_string(expected) << " = "
            << format_decimal(expected) << "\n";
  return kOk;
}

int cmd_spread_integrate(const Shared& shared, const std::string& spread_name,
                         const std::string& t_end_text, const std::string& method) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  SpreadModel model = build_spread(def, spread_name);
  const double t_end = to_double(parse_rational(t_end_text));
  const double step = to_double(parse_rational(shared.step));
  auto trajectory = integrate_rk4(model, t_end, step);
  const SpreadState& last = trajectory.back();

  std::vector<std::size_t> selected;
  if (method.empty())
    for (std::size_t i = 0; i < model.methods.size(); ++i) selected.push_back(i);
  else
    selected.push_back(model.method_index(method));

  for (std::size_t m : selected) {
    std::cout << model.methods[m] << " at t=" << format_decimal(last.t) << ":";
    for (double v : last.p[m]) std::cout << " " << format_decimal(v);
    std::cout << "\n";
  }
  std::cout << "out-of-range entries: " << (last.any_out_of_range ? "yes" : "no") << "\n";

  if (!shared.output.empty()) {
    std::ostringstream csv;
    csv << "t";
    for (std::size_t m : selected)
      for (int n = 0; n <= model.population_cap; ++n)
        csv << "," << model.methods[m] << "_p" << n;
    csv << "\n";
    for (const SpreadState& state : trajectory) {
      csv << format_decimal(state.t);
      for (std::size_t m : selected)
        for (double v : state.p[m]) csv << "," << format_decimal(v);
      csv << "\n";
    }
    write_file(shared.output, "trajectory.csv", csv.str());
  }
  return kOk;
}

int cmd_figures(const Shared& shared, const std::string& spread_name, unsigned level) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  SpreadModel model = build_spread(def, spread_name);
  if (shared.output.empty()) raise(ErrorCode::InvalidArgument, "figures needs --output");

  std::vector<std::size_t> methods;
  for (std::size_t i = 0; i < model.methods.size(); ++i) methods.push_back(i);
  std::vector<Rat> t_grid, x_grid;
  for (int i = 0; i <= 50; ++i) {
    Rat t = model.t_hi * i / 50;
    t.canonicalize();
    t_grid.push_back(t);
  }
  for (int i = 0; i <= 150; ++i) x_grid.push_back(frac(i, 30));  // x in [0,5]

  FigureBundle bundle = emit_figure_data(model, methods, level, t_grid, x_grid);
  write_file(shared.output, "fig1.csv", bundle.rate_csv);
  write_file(shared.output, "fig2.csv", bundle.curves_csv);
  write_file(shared.output, "fig3.csv", bundle.surface_csv);
  return kOk;
}

int cmd_scenario(const Shared& shared, const std::string& name) {
  SystemDefinition def = parse_definition(read_file(shared.def_path));
  const ScenarioDef& sc = def.scenario(name);
  ScenarioObjects objects = scenario_objects(sc);
  std::cout << "scenario " << name << " (" << sc.kind << ", k=" << sc.k
            << "): " << objects.validation << "\n";

  CatalogEntropy result = catalog_entropy(pullback_along(objects.shift), objects.catalog,
                                          objects.ctx, shared.steps, shared.size_cap);
  const EntropyTrace& best = result.traces[result.best_cover];
  print_trace(best);
  if (objects.target >= 0.0)
    std::cout << "reference target log(2k) = " << format_decimal(objects.target)
              << "; computed catalog estimate = " << format_decimal(result.estimate)
              << "\n";
  if (!shared.output.empty()) {
    for (std::size_t i = 0; i < result.traces.size(); ++i)
      write_file(shared.output, "trace_cover" + std::to_string(i) + ".csv",
                 trace_csv(result.traces[i]));
  }
  return objects.validation == "valid" ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information-topology toolkit"};
  app.require_subcommand(1);

  Shared shared;
  app.add_option("--seed", shared.seed, "seed for sampled checks");
  app.add_option("--n", shared.steps, "trace length for entropy commands");
  app.add_option("--size-cap", shared.size_cap, "joined-cover member cap");
  app.add_option("--output", shared.output, "directory for CSV artifacts");
  app.add_option("--step", shared.step, "integration step (rational)");

  std::string topology, observer, cover_name, map_name, scenario_name;
  std::string second_topology, f_name, g_name, h_name, method, t_text;
  std::vector<std::string> covers;
  std::uint64_t budget = 200000;
  unsigned level = 2;
  bool product_compact = false;

  auto def_arg = [&](CLI::App* cmd) {
    cmd->fallthrough();  // global flags may follow the subcommand
    cmd->add_option("def", shared.def_path, "definition file")->required();
  };

  auto* check = app.add_subcommand("check-axioms", "verify the algebra identities");
  def_arg(check);
  check->add_option("--topology", topology, "use this topology's universe");
  check->add_option("--budget", budget, "exhaustive/sample budget");

  auto* validate = app.add_subcommand("validate-topology", "check the open-family axioms");
  def_arg(validate);
  validate->add_option("name", topology)->required();

  auto* interior = app.add_subcommand("interior", "interior of an element");
  def_arg(interior);
  interior->add_option("topology", topology)->required();
  interior->add_option("observer", observer)->required();

  auto* isopen = app.add_subcommand("is-open", "openness with certificate");
  def_arg(isopen);
  isopen->add_option("topology", topology)->required();
  isopen->add_option("observer", observer)->required();

  auto* isclosed = app.add_subcommand("is-closed", "closedness via the complement");
  def_arg(isclosed);
  isclosed->add_option("topology", topology)->required();
  isclosed->add_option("observer", observer)->required();

  auto* continuity = app.add_subcommand("continuity", "pullback continuity check");
  def_arg(continuity);
  continuity->add_option("map", map_name)->required();
  continuity->add_option("source", topology, "topology on the map's source")->required();
  continuity->add_option("target", second_topology, "topology on the map's target")
      ->required();

  auto* product = app.add_subcommand("product", "finite product of two topologies");
  def_arg(product);
  product->add_option("first", topology)->required();
  product->add_option("second", second_topology)->required();
  product->add_flag("--compact", product_compact, "also check the designated tuple");

  auto* compact = app.add_subcommand("compact", "compactness verdict");
  def_arg(compact);
  compact->add_option("topology", topology)->required();
  compact->add_option("observer", observer, "defaults to the designated element");

  auto* cover = app.add_subcommand("cover", "validate a declared cover");
  def_arg(cover);
  cover->add_option("name", cover_name)->required();

  auto* minsub = app.add_subcommand("min-subcover", "smallest subcover");
  def_arg(minsub);
  minsub->add_option("name", cover_name)->required();

  auto* trace = app.add_subcommand("entropy-trace", "joined-cover entropy sequence");
  def_arg(trace);
  trace->add_option("--scenario", scenario_name);
  trace->add_option("--cover", cover_name);
  trace->add_option("--map", map_name);

  auto* sysent = app.add_subcommand("system-entropy", "catalog entropy lower bound");
  def_arg(sysent);
  sysent->add_option("--scenario", scenario_name);
  sysent->add_option("--top", topology);
  sysent->add_option("--map", map_name);
  sysent->add_option("--covers", covers)->delimiter(',');

  auto* conjugacy = app.add_subcommand("conjugacy", "trace equality under conjugation");
  def_arg(conjugacy);
  conjugacy->add_option("--fmap", f_name)->required();
  conjugacy->add_option("--gmap", g_name)->required();
  conjugacy->add_option("--hmap", h_name)->required();
  conjugacy->add_option("--xtop", topology)->required();
  conjugacy->add_option("--ytop", second_topology)->required();
  conjugacy->add_option("--covers", covers)->delimiter(',')->required();

  auto* closed_form = app.add_subcommand("spread-closed-form", "exact probability values");
  def_arg(closed_form);
  closed_form->add_option("spread", cover_name)->required();
  closed_form->add_option("--method", method)->required();
  closed_form->add_option("--level", level, "probability level n");
  closed_form->add_option("--t", t_text, "time (rational)")->required();

  auto* integrate = app.add_subcommand("spread-integrate", "fixed-step numeric run");
  def_arg(integrate);
  integrate->add_option("spread", cover_name)->required();
  integrate->add_option("--t-end", t_text)->required();
  integrate->add_option("--method", method);

  auto* figures = app.add_subcommand("figures", "CSV data for the standard figures");
  def_arg(figures);
  figures->add_option("spread", cover_name)->required();
  figures->add_option("--level", level, "probability level n");

  auto* scenario = app.add_subcommand("scenario", "build and run a named scenario");
  def_arg(scenario);
  scenario->add_option("name", scenario_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return cmd_check_axioms(shared, topology, budget);
    if (validate->parsed()) return cmd_validate(shared, topology);
    if (interior->parsed()) return cmd_interior(shared, topology, observer);
    if (isopen->parsed()) return cmd_is_open(shared, topology, observer);
    if (isclosed->parsed()) return cmd_is_closed(shared, topology, observer);
    if (continuity->parsed())
      return cmd_continuity(shared, map_name, topology, second_topology);
    if (product->parsed())
      return cmd_product(shared, topology, second_topology, product_compact);
    if (compact->parsed()) return cmd_compact(shared, topology, observer);
    if (cover->parsed()) return cmd_cover(shared, cover_name);
    if (minsub->parsed()) return cmd_min_subcover(shared, cover_name);
    if (trace->parsed())
      return cmd_entropy_trace(shared, scenario_name, cover_name, map_name);
    if (sysent->parsed())
      return cmd_system_entropy(shared, scenario_name, topology, map_name, covers);
    if (conjugacy->parsed())
      return cmd_conjugacy(shared, f_name, g_name, h_name, topology, second_topology,
                           covers);
    if (closed_form->parsed())
      return cmd_spread_closed_form(shared, cover_name, method, level, t_text);
    if (integrate->parsed()) return cmd_spread_integrate(shared, cover_name, t_text, method);
    if (figures->parsed()) return cmd_figures(shared, cover_name, level);
    if (scenario->parsed()) return cmd_scenario(shared, scenario_name);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::SyntaxError:
      case ErrorCode::UnresolvedReference:
      case ErrorCode::InvalidArgument:
        return kUsage;
      default:
        return kCheckFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
