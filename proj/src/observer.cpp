#include "infotop/observer.hpp"

#include <algorithm>
#include <set>

#include "infotop/error.hpp"

namespace infotop {

GroundSet::GroundSet(std::vector<std::string> pts, std::vector<std::string> ds)
    : points(std::move(pts)), dims(std::move(ds)) {
  if (points.empty() || dims.empty())
    raise(ErrorCode::InvalidArgument, "ground set needs at least one point and one dimension");
  std::set<std::string> seen(points.begin(), points.end());
  if (seen.size() != points.size())
    raise(ErrorCode::InvalidArgument, "duplicate point identifier");
  std::set<std::string> dseen(dims.begin(), dims.end());
  if (dseen.size() != dims.size())
    raise(ErrorCode::InvalidArgument, "duplicate dimension identifier");
}

std::size_t GroundSet::point_index(const std::string& id) const {
  auto it = std::find(points.begin(), points.end(), id);
  if (it == points.end())
    raise(ErrorCode::UnresolvedReference, "unknown point '" + id + "'");
  return static_cast<std::size_t>(it - points.begin());
}

std::size_t GroundSet::dim_index(const std::string& id) const {
  auto it = std::find(dims.begin(), dims.end(), id);
  if (it == dims.end())
    raise(ErrorCode::UnresolvedReference, "unknown dimension '" + id + "'");
  return static_cast<std::size_t>(it - dims.begin());
}

GroundPtr make_ground(std::vector<std::string> points, std::vector<std::string> dims) {
  return std::make_shared<const GroundSet>(std::move(points), std::move(dims));
}

Observer::Observer(GroundPtr ground, std::vector<Rat> values)
    : ground_(std::move(ground)), values_(std::move(values)) {
  if (!ground_) raise(ErrorCode::InvalidArgument, "observer without a ground set");
  if (values_.size() != ground_->points.size() * ground_->dims.size())
    raise(ErrorCode::InvalidArgument, "observer table does not cover points x dims");
  for (const Rat& v : values_)
    if (v < 0 || v > 1)
      raise(ErrorCode::ValueOutOfRange,
            "observer entry " + rational_to_string(v) + " outside [0,1]");
}

Observer Observer::constant(const GroundPtr& ground, const Rat& level) {
  return Observer(ground,
                  std::vector<Rat>(ground->points.size() * ground->dims.size(), level));
}

const Rat& Observer::at(std::size_t point, std::size_t dim) const {
  return values_[point * ground_->dims.size() + dim];
}

const Rat& Observer::at(const std::string& point, const std::string& dim) const {
  return at(ground_->point_index(point), ground_->dim_index(dim));
}

void Observer::set(std::size_t point, std::size_t dim, const Rat& value) {
  if (value < 0 || value > 1)
    raise(ErrorCode::ValueOutOfRange, "observer entry outside [0,1]");
  values_[point * ground_->dims.size() + dim] = value;
}

bool Observer::same_ground(const Observer& other) const {
  return ground_ == other.ground_ || (ground_ && other.ground_ && *ground_ == *other.ground_);
}

bool Observer::operator==(const Observer& other) const {
  return same_ground(other) && values_ == other.values_;
}

bool Observer::operator<(const Observer& other) const {
  // Grounds are compared by size only; distinct grounds never mix in one
  // container in practice.
  if (values_.size() != other.values_.size()) return values_.size() < other.values_.size();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const int c = cmp(values_[i], other.values_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

namespace {

void require_same_ground(const Observer& a, const Observer& b) {
  if (!a.same_ground(b))
    raise(ErrorCode::GroundMismatch, "observers live on different ground sets");
}

}  // namespace

Observer join(const Observer& a, const Observer& b) {
  require_same_ground(a, b);
  std::vector<Rat> out(a.values().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = rat_max(a.values()[i], b.values()[i]);
  return Observer(a.ground(), std::move(out));
}

Observer meet(const Observer& a, const Observer& b) {
  require_same_ground(a, b);
  std::vector<Rat> out(a.values().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = rat_min(a.values()[i], b.values()[i]);
  return Observer(a.ground(), std::move(out));
}

Observer scale(const Rat& r, const Observer& a) {
  if (r < 0 || r > 1)
    raise(ErrorCode::ScaleOutOfRange, "scale " + rational_to_string(r) + " outside [0,1]");
  std::vector<Rat> out(a.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = r * a.values()[i];
    out[i].canonicalize();
  }
  return Observer(a.ground(), std::move(out));
}

bool dominated_by(const Observer& a, const Observer& b) {
  require_same_ground(a, b);
  for (std::size_t i = 0; i < a.values().size(); ++i)
    if (a.values()[i] > b.values()[i]) return false;
  return true;
}

AlgebraUniverse<Observer> observer_universe(std::vector<Observer> elements,
                                            ClosureMode mode) {
  AlgebraUniverse<Observer> u;
  u.elements = std::move(elements);
  u.join = [](const Observer& a, const Observer& b) { return join(a, b); };
  u.meet = [](const Observer& a, const Observer& b) { return meet(a, b); };
  u.closure_mode = mode;
  return u;
}

AlgebraUniverse<Rat> scalar_universe(std::vector<Rat> elements, ClosureMode mode) {
  AlgebraUniverse<Rat> u;
  u.elements = std::move(elements);
  u.join = [](const Rat& a, const Rat& b) { return rat_max(a, b); };
  u.meet = [](const Rat& a, const Rat& b) { return rat_min(a, b); };
  u.closure_mode = mode;
  return u;
}

namespace {

std::vector<std::string> normalize_set(const std::vector<std::string>& in) {
  std::vector<std::string> s = in;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<std::string> set_union(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> set_intersection(const std::vector<std::string>& a,
                                          const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string render_set(const std::vector<std::string>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out + "}";
}

}  // namespace

ClassicalEmbedding embed_classical(const std::vector<std::string>& points,
                                   const std::vector<std::vector<std::string>>& family) {
  ClassicalEmbedding emb;
  emb.ground = make_ground(points, {"chi"});
  const std::vector<std::string> full = normalize_set(points);

  std::vector<std::vector<std::string>> sets;
  for (const auto& s : family) {
    auto n = normalize_set(s);
    for (const auto& p : n)
      if (std::find(points.begin(), points.end(), p) == points.end())
        raise(ErrorCode::UnresolvedReference, "set member '" + p + "' is not a point");
    if (std::find(sets.begin(), sets.end(), n) == sets.end()) sets.push_back(std::move(n));
  }

  auto member = [&](const std::vector<std::string>& s) {
    return std::find(sets.begin(), sets.end(), s) != sets.end();
  };
  if (!member({}))
    raise(ErrorCode::NotATopology, "family is missing the empty set");
  if (!member(full))
    raise(ErrorCode::NotATopology, "family is missing the full point set");
  for (const auto& a : sets)
    for (const auto& b : sets) {
      if (!member(set_union(a, b)))
        raise(ErrorCode::NotATopology,
              "family is missing the union of " + render_set(a) + " and " + render_set(b));
      if (!member(set_intersection(a, b)))
        raise(ErrorCode::NotATopology,
              "family is missing the intersection of " + render_set(a) + " and " +
                  render_set(b));
    }

  for (const auto& s : sets) {
    std::vector<Rat> values(points.size(), Rat(0));
    for (const auto& p : s) values[emb.ground->point_index(p)] = Rat(1);
    emb.observers.emplace_back(emb.ground, std::move(values));
  }
  emb.sets = std::move(sets);
  emb.full = Observer::constant(emb.ground, Rat(1));
  emb.empty = Observer::constant(emb.ground, Rat(0));
  return emb;
}

}  // namespace infotop
