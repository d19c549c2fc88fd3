#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infotop/spread.hpp"

namespace infotop {

// Parsed form of the line-oriented definition format. Sections:
//
//   POINTS <id...>                       DIMS <id...>
//   OBSERVER <name>                      one body row per point: <point> <v per dim>
//   FAMILY <name>                        BASE <obs> / RANGE <lo> <hi> / FREE <dim...>
//   TOPOLOGY <name>                      UNIVERSE [CLOSURE] <obs...> / OPENS <obs...> /
//                                        F <obs> / O <obs> / MODE closed|open /
//                                        SCALE <family>   (symbolic form)
//   MAP <name>                           one body row per point: <src> <dst>
//   COVER <name>                         SPACE <top> / TARGET <obs>|F / MEMBERS <obs...>
//   SPREAD <name>                        METHODS / TAGS / GAMMA / M / TIME / P0
//   SCENARIO <name>                      KIND finite-shift|windowed-shift / K / LEVEL /
//                                        M / WINDOW / THETA
//
// Rationals are written "p/q", as integers, or as decimals (converted
// exactly). '#' starts a comment.
struct ObserverDef {
  std::string name;
  std::vector<std::vector<Rat>> rows;  // per point, one value per dim
};

struct FamilyDef {
  std::string name;
  std::string base;
  Rat lo{0}, hi{1};
  std::vector<std::string> free_dims;
};

struct TopologyDef {
  std::string name;
  std::string scale_family;  // non-empty for the symbolic form
  bool closure = false;
  std::vector<std::string> universe;
  std::vector<std::string> opens;
  std::string designated;
  std::string least;
  bool closed_mode = false;
};

struct MapDef {
  std::string name;
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct CoverDef {
  std::string name;
  std::string space;
  std::string target;  // observer name, or "F" for the designated element
  std::vector<std::string> members;
};

struct SpreadDef {
  std::string name;
  std::vector<std::string> methods;
  std::vector<Rat> tags;
  bool sawtooth = false;
  std::vector<std::pair<std::string, Rat>> rates;
  int population_cap = 1;
  Rat t_lo{0}, t_hi{0};
  std::vector<std::pair<std::string, std::vector<Rat>>> initial;
};

struct ScenarioDef {
  std::string name;
  std::string kind;  // "finite-shift" or "windowed-shift"
  unsigned k = 2;
  Rat level{1, 2};
  int population_cap = 10;
  unsigned window = 6;
  Rat theta{1};
};

struct SystemDefinition {
  std::vector<std::string> points;
  std::vector<std::string> dims;
  std::vector<ObserverDef> observers;
  std::vector<FamilyDef> families;
  std::vector<TopologyDef> topologies;
  std::vector<MapDef> maps;
  std::vector<CoverDef> covers;
  std::vector<SpreadDef> spreads;
  std::vector<ScenarioDef> scenarios;

  const ObserverDef& observer(const std::string& name) const;
  const FamilyDef& family(const std::string& name) const;
  const TopologyDef& topology(const std::string& name) const;
  const MapDef& map(const std::string& name) const;
  const CoverDef& cover(const std::string& name) const;
  const SpreadDef& spread(const std::string& name) const;
  const ScenarioDef& scenario(const std::string& name) const;
};

// Parses UTF-8 text; the first problem is reported with its line number.
// All name references are resolved before returning.
SystemDefinition parse_definition(const std::string& text);

std::string serialize_definition(const SystemDefinition& def);

// Live objects from the parsed form.
struct BuiltSystem {
  GroundPtr ground;
  std::vector<std::string> observer_names;
  std::vector<Observer> observers;

  const Observer& observer(const std::string& name) const;
};

BuiltSystem build_system(const SystemDefinition& def);

ScaleFamily build_family(const SystemDefinition& def, const BuiltSystem& sys,
                         const std::string& name);

// A topology defined in a file is either a finite one or a symbolic
// scale-family one.
struct BuiltTopology {
  std::optional<Topology<Observer>> finite;
  std::optional<ScaleTopology> scale;

  bool symbolic() const { return scale.has_value(); }
  CoverContext<Observer> context() const {
    return symbolic() ? cover_context(*scale) : cover_context(*finite);
  }
  const Observer& designated() const {
    return symbolic() ? scale->designated : finite->designated;
  }
};

BuiltTopology build_topology(const SystemDefinition& def, const BuiltSystem& sys,
                             const std::string& name);

PointMap build_map(const SystemDefinition& def, const BuiltSystem& sys,
                   const std::string& name);

Cover<Observer> build_cover(const SystemDefinition& def, const BuiltSystem& sys,
                            const std::string& name, const BuiltTopology& top);

SpreadModel build_spread(const SystemDefinition& def, const std::string& name);

}  // namespace infotop
