#pragma once

#include <memory>
#include <string>
#include <vector>

#include "infotop/algebra.hpp"
#include "infotop/rational.hpp"

namespace infotop {

// Finite point and dimension identifier lists. Observers hold a shared
// pointer to their ground so tables never outlive the identifiers.
struct GroundSet {
  std::vector<std::string> points;
  std::vector<std::string> dims;

  GroundSet() = default;
  GroundSet(std::vector<std::string> pts, std::vector<std::string> ds);

  std::size_t point_index(const std::string& id) const;
  std::size_t dim_index(const std::string& id) const;

  bool operator==(const GroundSet& other) const {
    return points == other.points && dims == other.dims;
  }
};

using GroundPtr = std::shared_ptr<const GroundSet>;

GroundPtr make_ground(std::vector<std::string> points, std::vector<std::string> dims);

// Dense table point x dim -> [0,1], exact rational entries.
class Observer {
 public:
  Observer() = default;
  Observer(GroundPtr ground, std::vector<Rat> values);

  static Observer constant(const GroundPtr& ground, const Rat& level);

  const GroundPtr& ground() const { return ground_; }
  const std::vector<Rat>& values() const { return values_; }

  const Rat& at(std::size_t point, std::size_t dim) const;
  const Rat& at(const std::string& point, const std::string& dim) const;
  void set(std::size_t point, std::size_t dim, const Rat& value);

  bool same_ground(const Observer& other) const;

  bool operator==(const Observer& other) const;
  bool operator!=(const Observer& other) const { return !(*this == other); }
  // Deterministic ordering for dedup and stable report output.
  bool operator<(const Observer& other) const;

 private:
  GroundPtr ground_;
  std::vector<Rat> values_;  // row-major: point * |dims| + dim
};

// Entrywise max / min / scalar multiple.
Observer join(const Observer& a, const Observer& b);
Observer meet(const Observer& a, const Observer& b);
Observer scale(const Rat& r, const Observer& a);

// Pointwise partial order: a(x,i) <= b(x,i) everywhere.
bool dominated_by(const Observer& a, const Observer& b);

// Universe of observers under the entrywise operations.
AlgebraUniverse<Observer> observer_universe(std::vector<Observer> elements,
                                            ClosureMode mode = ClosureMode::OpenWorld);

// Plain rationals with min/max, for small scalar fixtures.
AlgebraUniverse<Rat> scalar_universe(std::vector<Rat> elements,
                                     ClosureMode mode = ClosureMode::OpenWorld);

// A finite classical topology rendered as characteristic-function observers
// (single dimension). Set operations on the classical side line up with the
// entrywise operations on the rendered side.
struct ClassicalEmbedding {
  GroundPtr ground;
  std::vector<std::vector<std::string>> sets;  // the input family, normalized
  std::vector<Observer> observers;             // chi_U for each set, same order
  Observer full;                               // chi_X
  Observer empty;                              // chi_empty
};

// Validates that the family contains the empty set and the full point set and
// is closed under pairwise union and intersection, then renders it.
ClassicalEmbedding embed_classical(const std::vector<std::string>& points,
                                   const std::vector<std::vector<std::string>>& family);

}  // namespace infotop
