#pragma once

// Sensing-function declarations and the (sensor, argument, value) labels
// that populate state vectors.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "analogy/olog.hpp"

namespace analogy {

// The argument used by sensors whose domain is a single point.
inline constexpr const char* kBullet = "•";

// A sensor reading: a number or a symbolic value.
class Value {
 public:
  Value() : v_(0.0) {}
  Value(double d) : v_(d) {}  // NOLINT(google-explicit-constructor)
  Value(int i) : v_(static_cast<double>(i)) {}  // NOLINT(google-explicit-constructor)
  Value(std::string s) : v_(std::move(s)) {}  // NOLINT(google-explicit-constructor)
  Value(const char* s) : v_(std::string(s)) {}  // NOLINT(google-explicit-constructor)

  bool is_number() const noexcept { return std::holds_alternative<double>(v_); }
  double number() const { return std::get<double>(v_); }
  const std::string& text() const { return std::get<std::string>(v_); }

  // Integral numbers print without a fractional part.
  std::string to_string() const;

  // Numbers order before strings.
  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  std::variant<double, std::string> v_;
};

struct Label {
  std::string sensor;
  std::string arg;
  Value value;

  // "(sensor,arg,value)"
  std::string to_string() const;

  friend bool operator==(const Label&, const Label&) = default;
  friend std::strong_ordering operator<=>(const Label& a, const Label& b);
};

using StateVector = std::set<Label>;

std::string to_string(const StateVector& v);

enum class SensorKind { kBase, kDerivative, kRelation, kAbstract };

const char* to_string(SensorKind k) noexcept;
// Throws ParseError for an unknown name.
SensorKind sensor_kind_from_string(const std::string& s);

struct Domain {
  std::vector<std::string> args;  // {kBullet} for a singleton domain

  static Domain singleton() { return Domain{{kBullet}}; }
  bool contains(const std::string& arg) const;
  friend bool operator==(const Domain&, const Domain&) = default;
};

struct Codomain {
  std::vector<Value> values;  // finite enumeration, used when no interval is set
  std::optional<std::pair<double, double>> interval;

  static Codomain boolean() { return Codomain{{Value(0), Value(1)}, std::nullopt}; }
  bool contains(const Value& v) const;
  bool is_numeric() const;
  // {a - b : a, b in C}; intervals map to [lo - hi, hi - lo]. Throws
  // NonNumericCodomainError.
  Codomain difference_set() const;
  friend bool operator==(const Codomain&, const Codomain&) = default;
};

struct SensingFunctionDecl {
  std::string id;
  SensorKind kind = SensorKind::kBase;
  Domain domain = Domain::singleton();
  Codomain codomain;
  std::string text;

  // derivative
  std::string base;
  double window = 0.0;

  // relation
  std::string relation;
  std::vector<std::string> entities;

  std::optional<TypeId> olog_type;

  friend bool operator==(const SensingFunctionDecl&, const SensingFunctionDecl&) = default;
};

// A binary relation between two declared entity sets.
struct RelationDecl {
  std::string id;
  std::string text;
  std::vector<std::string> left;
  std::vector<std::string> right;

  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

class SensorCatalog {
 public:
  // Throws DuplicateIdError, UnknownSensorError (derivative base),
  // UnknownRelationError, or InvalidLabelError for malformed declarations.
  void add(SensingFunctionDecl decl);
  void add_relation(RelationDecl rel);

  bool contains(const std::string& id) const noexcept { return sensors_.contains(id); }
  // Throws UnknownSensorError.
  const SensingFunctionDecl& get(const std::string& id) const;
  const RelationDecl& relation(const std::string& id) const;

  const std::map<std::string, SensingFunctionDecl>& sensors() const noexcept { return sensors_; }
  const std::map<std::string, RelationDecl>& relations() const noexcept { return relations_; }

  // Throws InvalidLabelError (or UnknownSensorError) unless arg and value
  // lie in the declared domain and codomain.
  void check_label(const Label& l) const;

  friend bool operator==(const SensorCatalog&, const SensorCatalog&) = default;

 private:
  std::map<std::string, SensingFunctionDecl> sensors_;
  std::map<std::string, RelationDecl> relations_;
};

// Windowed difference of `base`: value now minus value `window` time units
// earlier. The id defaults to "d" + base.id.
SensingFunctionDecl derive_sensor(const SensingFunctionDecl& base, double window,
                                  std::optional<std::string> id = std::nullopt);

// Indicator of (a, b) in the relation, on domain {bullet}. The id defaults
// to relation_id + "[" + a + "," + b + "]".
SensingFunctionDecl relation_sensor(const SensorCatalog& catalog, const std::string& relation_id,
                                    const std::string& a, const std::string& b,
                                    std::optional<std::string> id = std::nullopt);

}  // namespace analogy
