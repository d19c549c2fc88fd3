#include "infotop/sysdef.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "infotop/error.hpp"

namespace infotop {

namespace {

const std::set<std::string> kSectionKeywords = {"POINTS",  "DIMS", "OBSERVER",
                                                "FAMILY",  "TOPOLOGY", "MAP",
                                                "COVER",   "SPREAD",   "SCENARIO"};

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string token;
    while (ls >> token) {
      if (token[0] == '#') break;
      line.tokens.push_back(token);
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line, ErrorCode code, const std::string& message) {
  raise(code, "line " + std::to_string(line) + ": " + message);
}

Rat parse_rat_at(std::size_t line, const std::string& token) {
  try {
    return parse_rational(token);
  } catch (const Error& e) {
    fail(line, ErrorCode::SyntaxError, e.what());
  }
}

long parse_int_at(std::size_t line, const std::string& token) {
  try {
    std::size_t used = 0;
    long v = std::stol(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    fail(line, ErrorCode::SyntaxError, "expected an integer, got '" + token + "'");
  }
}

template <class T>
const T& find_named(const std::vector<T>& list, const std::string& name,
                    const char* what) {
  for (const T& item : list)
    if (item.name == name) return item;
  raise(ErrorCode::UnresolvedReference, std::string(what) + " '" + name + "' is not defined");
}

}  // namespace

const ObserverDef& SystemDefinition::observer(const std::string& name) const {
  return find_named(observers, name, "observer");
}
const FamilyDef& SystemDefinition::family(const std::string& name) const {
  return find_named(families, name, "family");
}
const TopologyDef& SystemDefinition::topology(const std::string& name) const {
  return find_named(topologies, name, "topology");
}
const MapDef& SystemDefinition::map(const std::string& name) const {
  return find_named(maps, name, "map");
}
const CoverDef& SystemDefinition::cover(const std::string& name) const {
  return find_named(covers, name, "cover");
}
const SpreadDef& SystemDefinition::spread(const std::string& name) const {
  return find_named(spreads, name, "spread");
}
const ScenarioDef& SystemDefinition::scenario(const std::string& name) const {
  return find_named(scenarios, name, "scenario");
}

namespace {

// Cross-checks every name reference once parsing is done.
void resolve_references(const SystemDefinition& def) {
  auto has_observer = [&](const std::string& n) {
    for (const auto& o : def.observers)
      if (o.name == n) return true;
    return false;
  };
  auto require_observer = [&](const std::string& n, std::size_t where) {
    if (!has_observer(n))
      fail(where, ErrorCode::UnresolvedReference, "observer '" + n + "' is not defined");
  };
  for (const auto& f : def.families) {
    if (!has_observer(f.base))
      raise(ErrorCode::UnresolvedReference, "family base '" + f.base + "' is not defined");
    for (const auto& d : f.free_dims)
      if (std::find(def.dims.begin(), def.dims.end(), d) == def.dims.end())
        raise(ErrorCode::UnresolvedReference, "free dimension '" + d + "' is not declared");
  }
  for (const auto& t : def.topologies) {
    if (!t.scale_family.empty()) {
      def.family(t.scale_family);
      continue;
    }
    for (const auto& n : t.universe) require_observer(n, 0);
    for (const auto& n : t.opens) require_observer(n, 0);
    require_observer(t.designated, 0);
    require_observer(t.least, 0);
  }
  for (const auto& c : def.covers) {
    def.topology(c.space);
    if (c.target != "F") require_observer(c.target, 0);
    for (const auto& n : c.members) require_observer(n, 0);
  }
  for (const auto& m : def.maps)
    for (const auto& [src, dst] : m.pairs) {
      if (std::find(def.points.begin(), def.points.end(), src) == def.points.end())
        raise(ErrorCode::UnresolvedReference, "map source '" + src + "' is not a point");
      if (std::find(def.points.begin(), def.points.end(), dst) == def.points.end())
        raise(ErrorCode::UnresolvedReference, "map image '" + dst + "' is not a point");
    }
  for (const auto& s : def.spreads) {
    for (const auto& [m, r] : s.rates) {
      (void)r;
      if (std::find(s.methods.begin(), s.methods.end(), m) == s.methods.end())
        raise(ErrorCode::UnresolvedReference, "rate for unknown method '" + m + "'");
    }
    for (const auto& [m, row] : s.initial) {
      (void)row;
      if (std::find(s.methods.begin(), s.methods.end(), m) == s.methods.end())
        raise(ErrorCode::UnresolvedReference, "initial row for unknown method '" + m + "'");
    }
  }
}

}  // namespace

SystemDefinition parse_definition(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) raise(ErrorCode::SyntaxError, "no sections in the definition");

  SystemDefinition def;
  enum class Section { None, Points, Dims, Observer, Family, Topology, Map, Cover, Spread,
                       Scenario };
  Section section = Section::None;

  for (const Line& line : lines) {
    const std::string& head = line.tokens.front();
    if (kSectionKeywords.count(head)) {
      if (head == "POINTS") {
        if (line.tokens.size() < 2) fail(line.number, ErrorCode::SyntaxError, "POINTS is empty");
        def.points.assign(line.tokens.begin() + 1, line.tokens.end());
        section = Section::Points;
      } else if (head == "DIMS") {
        if (line.tokens.size() < 2) fail(line.number, ErrorCode::SyntaxError, "DIMS is empty");
        def.dims.assign(line.tokens.begin() + 1, line.tokens.end());
        section = Section::Dims;
      } else {
        if (line.tokens.size() != 2)
          fail(line.number, ErrorCode::SyntaxError, head + " needs exactly one name");
        const std::string& name = line.tokens[1];
        if (head == "OBSERVER") {
          def.observers.push_back({name, {}});
          section = Section::Observer;
        } else if (head == "FAMILY") {
          def.families.push_back({name, "", Rat(0), Rat(1), {}});
          section = Section::Family;
        } else if (head == "TOPOLOGY") {
          TopologyDef t;
          t.name = name;
          def.topologies.push_back(std::move(t));
          section = Section::Topology;
        } else if (head == "MAP") {
          def.maps.push_back({name, {}});
          section = Section::Map;
        } else if (head == "COVER") {
          def.covers.push_back({name, "", "F", {}});
          section = Section::Cover;
        } else if (head == "SPREAD") {
          SpreadDef s;
          s.name = name;
          def.spreads.push_back(std::move(s));
          section = Section::Spread;
        } else {
          ScenarioDef s;
          s.name = name;
          def.scenarios.push_back(std::move(s));
          section = Section::Scenario;
        }
      }
      continue;
    }

    switch (section) {
      case Section::None:
        fail(line.number, ErrorCode::SyntaxError, "content before any section");
      case Section::Points:
      case Section::Dims:
        fail(line.number, ErrorCode::SyntaxError, "unexpected continuation line");
      case Section::Observer: {
        if (def.points.empty() || def.dims.empty())
          fail(line.number, ErrorCode::SyntaxError, "OBSERVER before POINTS/DIMS");
        if (line.tokens.size() != def.dims.size() + 1)
          fail(line.number, ErrorCode::SyntaxError,
               "observer row needs the point name and one value per dimension");
        const std::string& point = line.tokens[0];
        auto it = std::find(def.points.begin(), def.points.end(), point);
        if (it == def.points.end())
          fail(line.number, ErrorCode::UnresolvedReference, "unknown point '" + point + "'");
        const std::size_t index = static_cast<std::size_t>(it - def.points.begin());
        auto& obs = def.observers.back();
        if (obs.rows.empty()) obs.rows.resize(def.points.size());
        if (!obs.rows[index].empty())
          fail(line.number, ErrorCode::SyntaxError, "duplicate row for point '" + point + "'");
        for (std::size_t d = 0; d < def.dims.size(); ++d)
          obs.rows[index].push_back(parse_rat_at(line.number, line.tokens[d + 1]));
        break;
      }
      case Section::Family: {
        auto& fam = def.families.back();
        if (head == "BASE" && line.tokens.size() == 2) fam.base = line.tokens[1];
        else if (head == "RANGE" && line.tokens.size() == 3) {
          fam.lo = parse_rat_at(line.number, line.tokens[1]);
          fam.hi = parse_rat_at(line.number, line.tokens[2]);
        } else if (head == "FREE" && line.tokens.size() >= 2)
          fam.free_dims.assign(line.tokens.begin() + 1, line.tokens.end());
        else
          fail(line.number, ErrorCode::SyntaxError, "unrecognized FAMILY line");
        break;
      }
      case Section::Topology: {
        auto& top = def.topologies.back();
        if (head == "SCALE" && line.tokens.size() == 2) top.scale_family = line.tokens[1];
        else if (head == "UNIVERSE" && line.tokens.size() >= 2) {
          std::size_t start = 1;
          if (line.tokens[1] == "CLOSURE") {
            top.closure = true;
            start = 2;
          }
          if (line.tokens.size() <= start)
            fail(line.number, ErrorCode::SyntaxError, "UNIVERSE lists no observers");
          top.universe.assign(line.tokens.begin() + start, line.tokens.end());
        } else if (head == "OPENS" && line.tokens.size() >= 2)
          top.opens.assign(line.tokens.begin() + 1, line.tokens.end());
        else if (head == "F" && line.tokens.size() == 2) top.designated = line.tokens[1];
        else if (head == "O" && line.tokens.size() == 2) top.least = line.tokens[1];
        else if (head == "MODE" && line.tokens.size() == 2)
          top.closed_mode = line.tokens[1] == "closed";
        else
          fail(line.number, ErrorCode::SyntaxError, "unrecognized TOPOLOGY line");
        break;
      }
      case Section::Map: {
        if (line.tokens.size() != 2)
          fail(line.number, ErrorCode::SyntaxError, "map row needs source and image");
        def.maps.back().pairs.emplace_back(line.tokens[0], line.tokens[1]);
        break;
      }
      case Section::Cover: {
        auto& cov = def.covers.back();
        if (head == "SPACE" && line.tokens.size() == 2) cov.space = line.tokens[1];
        else if (head == "TARGET" && line.tokens.size() == 2) cov.target = line.tokens[1];
        else if (head == "MEMBERS" && line.tokens.size() >= 2)
          cov.members.assign(line.tokens.begin() + 1, line.tokens.end());
        else
          fail(line.number, ErrorCode::SyntaxError, "unrecognized COVER line");
        break;
      }
      case Section::Spread: {
        auto& spread = def.spreads.back();
        if (head == "METHODS" && line.tokens.size() >= 2)
          spread.methods.assign(line.tokens.begin() + 1, line.tokens.end());
        else if (head == "TAGS" && line.tokens.size() >= 2) {
          spread.tags.clear();
          for (std::size_t i = 1; i < line.tokens.size(); ++i)
            spread.tags.push_back(parse_rat_at(line.number, line.tokens[i]));
        } else if (head == "GAMMA" && line.tokens.size() == 2 &&
                   line.tokens[1] == "sawtooth")
          spread.sawtooth = true;
        else if (head == "GAMMA" && line.tokens.size() == 3)
          spread.rates.emplace_back(line.tokens[1],
                                    parse_rat_at(line.number, line.tokens[2]));
        else if (head == "M" && line.tokens.size() == 2)
          spread.population_cap = static_cast<int>(parse_int_at(line.number, line.tokens[1]));
        else if (head == "TIME" && line.tokens.size() == 3) {
          spread.t_lo = parse_rat_at(line.number, line.tokens[1]);
          spread.t_hi = parse_rat_at(line.number, line.tokens[2]);
        } else if (head == "P0" && line.tokens.size() >= 3) {
          std::vector<Rat> row;
          for (std::size_t i = 2; i < line.tokens.size(); ++i)
            row.push_back(parse_rat_at(line.number, line.tokens[i]));
          spread.initial.emplace_back(line.tokens[1], std::move(row));
        } else
          fail(line.number, ErrorCode::SyntaxError, "unrecognized SPREAD line");
        break;
      }
      case Section::Scenario: {
        auto& sc = def.scenarios.back();
        if (head == "KIND" && line.tokens.size() == 2) sc.kind = line.tokens[1];
        else if (head == "K" && line.tokens.size() == 2)
          sc.k = static_cast<unsigned>(parse_int_at(line.number, line.tokens[1]));
        else if (head == "LEVEL" && line.tokens.size() == 2)
          sc.level = parse_rat_at(line.number, line.tokens[1]);
        else if (head == "M" && line.tokens.size() == 2)
          sc.population_cap = static_cast<int>(parse_int_at(line.number, line.tokens[1]));
        else if (head == "WINDOW" && line.tokens.size() == 2)
          sc.window = static_cast<unsigned>(parse_int_at(line.number, line.tokens[1]));
        else if (head == "THETA" && line.tokens.size() == 2)
          sc.theta = parse_rat_at(line.number, line.tokens[1]);
        else
          fail(line.number, ErrorCode::SyntaxError, "unrecognized SCENARIO line");
        break;
      }
    }
  }

  for (const auto& obs : def.observers) {
    if (obs.rows.size() != def.points.size())
      raise(ErrorCode::SyntaxError, "observer '" + obs.name + "' has no rows");
    for (std::size_t p = 0; p < obs.rows.size(); ++p)
      if (obs.rows[p].size() != def.dims.size())
        raise(ErrorCode::SyntaxError,
              "observer '" + obs.name + "' is missing the row for point '" + def.points[p] +
                  "'");
  }
  for (const auto& sc : def.scenarios)
    if (sc.kind != "finite-shift" && sc.kind != "windowed-shift")
      raise(ErrorCode::SyntaxError,
            "scenario '" + sc.name + "' needs KIND finite-shift or windowed-shift");
  resolve_references(def);
  return def;
}

std::string serialize_definition(const SystemDefinition& def) {
  std::ostringstream out;
  auto list = [&](const std::vector<std::string>& items) {
    for (const auto& s : items) out << " " << s;
    out << "\n";
  };
  if (!def.points.empty()) {
    out << "POINTS";
    list(def.points);
  }
  if (!def.dims.empty()) {
    out << "DIMS";
    list(def.dims);
  }
  for (const auto& obs : def.observers) {
    out << "\nOBSERVER " << obs.name << "\n";
    for (std::size_t p = 0; p < obs.rows.size(); ++p) {
      out << def.points[p];
      for (const Rat& v : obs.rows[p]) out << " " << rational_to_string(v);
      out << "\n";
    }
  }
  for (const auto& fam : def.families) {
    out << "\nFAMILY " << fam.name << "\n";
    out << "BASE " << fam.base << "\n";
    out << "RANGE " << rational_to_string(fam.lo) << " " << rational_to_string(fam.hi)
        << "\n";
    if (!fam.free_dims.empty()) {
      out << "FREE";
      list(fam.free_dims);
    }
  }
  for (const auto& top : def.topologies) {
    out << "\nTOPOLOGY " << top.name << "\n";
    if (!top.scale_family.empty()) {
      out << "SCALE " << top.scale_family << "\n";
      continue;
    }
    out << "UNIVERSE" << (top.closure ? " CLOSURE" : "");
    list(top.universe);
    out << "OPENS";
    list(top.opens);
    out << "F " << top.designated << "\n";
    out << "O " << top.least << "\n";
    if (top.closed_mode) out << "MODE closed\n";
  }
  for (const auto& m : def.maps) {
    out << "\nMAP " << m.name << "\n";
    for (const auto& [src, dst] : m.pairs) out << src << " " << dst << "\n";
  }
  for (const auto& c : def.covers) {
    out << "\nCOVER " << c.name << "\n";
    out << "SPACE " << c.space << "\n";
    out << "TARGET " << c.target << "\n";
    out << "MEMBERS";
    list(c.members);
  }
  for (const auto& s : def.spreads) {
    out << "\nSPREAD " << s.name << "\n";
    out << "METHODS";
    list(s.methods);
    if (!s.tags.empty()) {
      out << "TAGS";
      for (const Rat& t : s.tags) out << " " << rational_to_string(t);
      out << "\n";
    }
    if (s.sawtooth) out << "GAMMA sawtooth\n";
    for (const auto& [m, r] : s.rates)
      out << "GAMMA " << m << " " << rational_to_string(r) << "\n";
    out << "M " << s.population_cap << "\n";
    out << "TIME " << rational_to_string(s.t_lo) << " " << rational_to_string(s.t_hi)
        << "\n";
    for (const auto& [m, row] : s.initial) {
      out << "P0 " << m;
      for (const Rat& v : row) out << " " << rational_to_string(v);
      out << "\n";
    }
  }
  for (const auto& sc : def.scenarios) {
    out << "\nSCENARIO " << sc.name << "\n";
    out << "KIND " << sc.kind << "\n";
    out << "K " << sc.k << "\n";
    if (sc.kind == "finite-shift") {
      out << "LEVEL " << rational_to_string(sc.level) << "\n";
      out << "M " << sc.population_cap << "\n";
    } else {
      out << "WINDOW " << sc.window << "\n";
      out << "THETA " << rational_to_string(sc.theta) << "\n";
    }
  }
  return out.str();
}

const Observer& BuiltSystem::observer(const std::string& name) const {
  for (std::size_t i = 0; i < observer_names.size(); ++i)
    if (observer_names[i] == name) return observers[i];
  raise(ErrorCode::UnresolvedReference, "observer '" + name + "' is not defined");
}

BuiltSystem build_system(const SystemDefinition& def) {
  BuiltSystem sys;
  if (def.points.empty() || def.dims.empty())
    raise(ErrorCode::SyntaxError, "definition without POINTS/DIMS");
  sys.ground = make_ground(def.points, def.dims);
  for (const auto& obs : def.observers) {
    std::vector<Rat> values;
    for (const auto& row : obs.rows)
      values.insert(values.end(), row.begin(), row.end());
    sys.observer_names.push_back(obs.name);
    sys.observers.emplace_back(sys.ground, std::move(values));
  }
  return sys;
}

ScaleFamily build_family(const SystemDefinition& def, const BuiltSystem& sys,
                         const std::string& name) {
  const FamilyDef& fam = def.family(name);
  std::set<std::string> free(fam.free_dims.begin(), fam.free_dims.end());
  return ScaleFamily(sys.observer(fam.base), fam.lo, fam.hi, std::move(free));
}

BuiltTopology build_topology(const SystemDefinition& def, const BuiltSystem& sys,
                             const std::string& name) {
  const TopologyDef& td = def.topology(name);
  BuiltTopology built;
  if (!td.scale_family.empty()) {
    built.scale = ScaleTopology(build_family(def, sys, td.scale_family));
    return built;
  }
  if (td.universe.empty() || td.opens.empty() || td.designated.empty() || td.least.empty())
    raise(ErrorCode::SyntaxError,
          "topology '" + name + "' needs UNIVERSE, OPENS, F and O");
  std::vector<Observer> seed;
  for (const auto& n : td.universe) seed.push_back(sys.observer(n));
  Topology<Observer> top;
  if (td.closure) {
    top.universe = closed_universe_from_seed(seed, observer_universe({}));
    if (!td.closed_mode) top.universe.closure_mode = ClosureMode::OpenWorld;
  } else {
    top.universe = observer_universe(
        seed, td.closed_mode ? ClosureMode::Closed : ClosureMode::OpenWorld);
  }
  for (const auto& n : td.opens) top.opens.push_back(sys.observer(n));
  top.designated = sys.observer(td.designated);
  top.least = sys.observer(td.least);
  built.finite = std::move(top);
  return built;
}

PointMap build_map(const SystemDefinition& def, const BuiltSystem& sys,
                   const std::string& name) {
  const MapDef& md = def.map(name);
  std::vector<std::size_t> image(sys.ground->points.size(), sys.ground->points.size());
  for (const auto& [src, dst] : md.pairs) {
    const std::size_t s = sys.ground->point_index(src);
    if (image[s] != sys.ground->points.size())
      raise(ErrorCode::SyntaxError, "map '" + name + "' lists point '" + src + "' twice");
    image[s] = sys.ground->point_index(dst);
  }
  for (std::size_t s = 0; s < image.size(); ++s)
    if (image[s] == sys.ground->points.size())
      raise(ErrorCode::SyntaxError,
            "map '" + name + "' is missing point '" + sys.ground->points[s] + "'");
  return PointMap(sys.ground, sys.ground, std::move(image));
}

Cover<Observer> build_cover(const SystemDefinition& def, const BuiltSystem& sys,
                            const std::string& name, const BuiltTopology& top) {
  const CoverDef& cd = def.cover(name);
  Observer target =
      cd.target == "F" ? top.designated() : sys.observer(cd.target);
  std::vector<Observer> members;
  for (const auto& n : cd.members) members.push_back(sys.observer(n));
  return make_cover(target, members, top.context());
}

SpreadModel build_spread(const SystemDefinition& def, const std::string& name) {
  const SpreadDef& sd = def.spread(name);
  std::vector<Rat> tags = sd.tags;
  if (tags.empty())
    for (std::size_t i = 0; i < sd.methods.size(); ++i) tags.push_back(Rat(static_cast<long>(i)));
  if (tags.size() != sd.methods.size())
    raise(ErrorCode::SyntaxError, "TAGS must list one value per method");
  std::vector<Rat> rates(sd.methods.size(), Rat(0));
  if (sd.sawtooth)
    for (std::size_t i = 0; i < tags.size(); ++i) rates[i] = sawtooth_rate(tags[i]);
  for (const auto& [m, r] : sd.rates) {
    auto it = std::find(sd.methods.begin(), sd.methods.end(), m);
    rates[static_cast<std::size_t>(it - sd.methods.begin())] = r;
  }
  std::vector<std::vector<Rat>> initial(
      sd.methods.size(),
      std::vector<Rat>(static_cast<std::size_t>(sd.population_cap) + 1, Rat(0)));
  for (const auto& [m, row] : sd.initial) {
    auto it = std::find(sd.methods.begin(), sd.methods.end(), m);
    if (row.size() != initial[0].size())
      raise(ErrorCode::SyntaxError, "P0 row for '" + m + "' must list M+1 values");
    initial[static_cast<std::size_t>(it - sd.methods.begin())] = row;
  }
  return make_spread_model(sd.methods, tags, rates, sd.population_cap, sd.t_lo, sd.t_hi,
                           initial);
}

}  // namespace infotop
