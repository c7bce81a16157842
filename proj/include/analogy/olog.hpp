#pragma once

// Ologs at presentation level: text-labelled types and aspects plus the
// pullback squares they were built from. No path equations are stored.

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace analogy {

using TypeId = std::string;
using AspectId = std::string;

struct OlogType {
  TypeId id;
  std::string text;

  friend bool operator==(const OlogType&, const OlogType&) = default;
};

struct Aspect {
  AspectId id;
  std::string text;
  TypeId source;
  TypeId target;

  friend bool operator==(const Aspect&, const Aspect&) = default;
};

// apex --p1--> B --f--> D and apex --p2--> C --g--> D.
struct PullbackSquare {
  TypeId apex;
  AspectId p1;
  AspectId p2;
  AspectId f;
  AspectId g;

  friend bool operator==(const PullbackSquare&, const PullbackSquare&) = default;
};

class Olog {
 public:
  void add_type(TypeId id, std::string text);
  void add_aspect(AspectId id, std::string text, TypeId source, TypeId target);
  // Throws CospanMismatchError when the four aspects do not form a square.
  void add_pullback(PullbackSquare square);

  const std::vector<OlogType>& types() const noexcept { return types_; }
  const std::vector<Aspect>& aspects() const noexcept { return aspects_; }
  const std::vector<PullbackSquare>& pullbacks() const noexcept { return pullbacks_; }

  bool has_type(const TypeId& id) const noexcept { return type_index_.contains(id); }
  bool has_aspect(const AspectId& id) const noexcept { return aspect_index_.contains(id); }
  const OlogType& type(const TypeId& id) const;
  const Aspect& aspect(const AspectId& id) const;
  std::size_t type_position(const TypeId& id) const;

  friend bool operator==(const Olog& a, const Olog& b) {
    return a.types_ == b.types_ && a.aspects_ == b.aspects_ && a.pullbacks_ == b.pullbacks_;
  }

 private:
  std::vector<OlogType> types_;
  std::vector<Aspect> aspects_;
  std::vector<PullbackSquare> pullbacks_;
  std::unordered_map<TypeId, std::size_t> type_index_;
  std::unordered_map<AspectId, std::size_t> aspect_index_;
};

struct FiberProductSpec {
  TypeId apex;
  std::string apex_text;
  AspectId p1;
  std::string p1_text;
  AspectId p2;
  std::string p2_text;
};

// Adds the apex P of the cospan B --f--> D <--g-- C with projections
// P --p1--> B and P --p2--> C, and records the square. The input olog is
// left untouched.
Olog fiber_product(const Olog& o, const AspectId& f, const AspectId& g, const FiberProductSpec& spec);

// Positive cost per aspect; aspects without an explicit entry use the
// default cost.
class EdgeCost {
 public:
  EdgeCost() = default;
  explicit EdgeCost(double default_cost);
  static EdgeCost unit() { return EdgeCost(1.0); }

  void set(const AspectId& aspect, double cost);
  double of(const AspectId& aspect) const;
  double default_cost() const noexcept { return default_cost_; }
  const std::map<AspectId, double>& overrides() const noexcept { return costs_; }

 private:
  double default_cost_ = 1.0;
  std::map<AspectId, double> costs_;
};

// Nonnegative distance or +infinity; arithmetic saturates.
class OlogDistance {
 public:
  static OlogDistance finite(double v) { return OlogDistance(v); }
  static OlogDistance infinite() { return OlogDistance(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const noexcept { return value_; }
  // "inf" for the infinite distance, otherwise the shortest decimal form.
  std::string to_string() const;

  friend OlogDistance operator+(OlogDistance a, OlogDistance b) {
    return OlogDistance(a.value_ + b.value_);
  }
  friend auto operator<=>(const OlogDistance&, const OlogDistance&) = default;

 private:
  explicit OlogDistance(double v) : value_(v) {}
  double value_;
};

struct OlogPath {
  OlogDistance distance = OlogDistance::infinite();
  std::vector<TypeId> types;      // x ... y, empty when unreachable
  std::vector<AspectId> aspects;  // one per step, traversed in either direction
};

// Shortest path in the underlying undirected graph (Dijkstra). Throws
// UnknownTypeError or NonpositiveCostError.
OlogPath olog_shortest_path(const Olog& o, const EdgeCost& c, const TypeId& x, const TypeId& y);
OlogDistance olog_distance(const Olog& o, const EdgeCost& c, const TypeId& x, const TypeId& y);

// Ids created by add_relation_pattern.
struct RelationPatternIds {
  TypeId pair;        // a pair (x, y) with x of kind K1 and y of kind K2
  TypeId related;     // the same pairs restricted to x ~ y
  AspectId first;     // pair -> K1
  AspectId second;    // pair -> K2
  AspectId inclusion; // related --is--> pair
};

// Expands the relation-as-type pattern over the existing types kind1, kind2.
// Ids are derived from `prefix`.
RelationPatternIds add_relation_pattern(Olog& o, const std::string& prefix, const TypeId& kind1,
                                        const TypeId& kind2, const std::string& relation_text);

struct IndicatorPatternIds {
  TypeId booleans;     // {0,1}
  TypeId zero;         // {0}
  TypeId one;          // {1}
  AspectId indicator;  // pairs -> {0,1}
  AspectId include_zero;
  AspectId include_one;
  TypeId unrelated;    // pullback of indicator and include_zero
  TypeId related;      // pullback of indicator and include_one
};

// Expands the indicator pattern on `pairs`: adds q_R : pairs -> {0,1}, the
// inclusions of {0} and {1}, and the two fiber products. The {0,1}, {0}, {1}
// types and both inclusions have fixed ids and are reused when present.
IndicatorPatternIds add_indicator_pattern(Olog& o, const std::string& prefix, const TypeId& pairs,
                                          const std::string& relation_text);

}  // namespace analogy
