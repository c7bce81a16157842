#include "analogy/sensing.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "analogy/errors.hpp"

namespace analogy {

std::string Value::to_string() const {
  if (!is_number()) return text();
  const double d = number();
  if (std::isfinite(d) && d == std::trunc(d) && std::fabs(d) < 1e15) {
    return std::to_string(static_cast<long long>(d));
  }
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  (void)ec;
  return std::string(buf, end);
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.is_number() != b.is_number()) {
    return a.is_number() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_number()) {
    const double x = a.number(), y = b.number();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  return a.text() <=> b.text();
}

std::string Label::to_string() const {
  return "(" + sensor + "," + arg + "," + value.to_string() + ")";
}

std::strong_ordering operator<=>(const Label& a, const Label& b) {
  if (auto c = a.sensor <=> b.sensor; c != 0) return c;
  if (auto c = a.arg <=> b.arg; c != 0) return c;
  return a.value <=> b.value;
}

std::string to_string(const StateVector& v) {
  std::string out = "{";
  bool first = true;
  for (const Label& l : v) {
    if (!first) out += ", ";
    first = false;
    out += l.to_string();
  }
  return out + "}";
}

const char* to_string(SensorKind k) noexcept {
  switch (k) {
    case SensorKind::kBase: return "base";
    case SensorKind::kDerivative: return "derivative";
    case SensorKind::kRelation: return "relation";
    case SensorKind::kAbstract: return "abstract";
  }
  return "base";
}

SensorKind sensor_kind_from_string(const std::string& s) {
  if (s == "base") return SensorKind::kBase;
  if (s == "derivative") return SensorKind::kDerivative;
  if (s == "relation") return SensorKind::kRelation;
  if (s == "abstract") return SensorKind::kAbstract;
  throw ParseError("unknown sensor kind: " + s);
}

bool Domain::contains(const std::string& arg) const {
  return std::find(args.begin(), args.end(), arg) != args.end();
}

bool Codomain::contains(const Value& v) const {
  if (interval) {
    return v.is_number() && v.number() >= interval->first && v.number() <= interval->second;
  }
  return std::find(values.begin(), values.end(), v) != values.end();
}

bool Codomain::is_numeric() const {
  if (interval) return true;
  return !values.empty() &&
         std::all_of(values.begin(), values.end(), [](const Value& v) { return v.is_number(); });
}

Codomain Codomain::difference_set() const {
  if (!is_numeric()) throw NonNumericCodomainError("codomain is not numeric");
  if (interval) {
    const double w = interval->second - interval->first;
    return Codomain{{}, std::make_pair(-w, w)};
  }
  std::set<Value> diffs;
  for (const Value& a : values) {
    for (const Value& b : values) diffs.insert(Value(a.number() - b.number()));
  }
  return Codomain{{diffs.begin(), diffs.end()}, std::nullopt};
}

void SensorCatalog::add(SensingFunctionDecl decl) {
  if (sensors_.contains(decl.id)) throw DuplicateIdError(decl.id);
  if (decl.kind == SensorKind::kDerivative) {
    if (!sensors_.contains(decl.base)) throw UnknownSensorError(decl.base);
    if (!(decl.window > 0.0)) {
      throw InvalidLabelError("derivative sensor " + decl.id + " needs a positive window");
    }
  }
  if (decl.kind == SensorKind::kRelation) {
    if (!decl.relation.empty() && !relations_.contains(decl.relation)) {
      throw UnknownRelationError(decl.relation);
    }
    if (!(decl.codomain == Codomain::boolean())) {
      throw InvalidLabelError("relation sensor " + decl.id + " must have codomain {0,1}");
    }
  }
  if (decl.domain.args.empty()) {
    throw InvalidLabelError("sensor " + decl.id + " has an empty domain");
  }
  sensors_.emplace(decl.id, std::move(decl));
}

void SensorCatalog::add_relation(RelationDecl rel) {
  if (relations_.contains(rel.id)) throw DuplicateIdError(rel.id);
  relations_.emplace(rel.id, std::move(rel));
}

const SensingFunctionDecl& SensorCatalog::get(const std::string& id) const {
  auto it = sensors_.find(id);
  if (it == sensors_.end()) throw UnknownSensorError(id);
  return it->second;
}

const RelationDecl& SensorCatalog::relation(const std::string& id) const {
  auto it = relations_.find(id);
  if (it == relations_.end()) throw UnknownRelationError(id);
  return it->second;
}

void SensorCatalog::check_label(const Label& l) const {
  const SensingFunctionDecl& d = get(l.sensor);
  if (!d.domain.contains(l.arg)) {
    throw InvalidLabelError("argument " + l.arg + " not in the domain of " + l.sensor);
  }
  if (!d.codomain.contains(l.value)) {
    throw InvalidLabelError("value " + l.value.to_string() + " not in the codomain of " +
                            l.sensor);
  }
}

SensingFunctionDecl derive_sensor(const SensingFunctionDecl& base, double window,
                                  std::optional<std::string> id) {
  if (!(window > 0.0)) throw InvalidLabelError("derivative window must be positive");
  if (!base.codomain.is_numeric()) {
    throw NonNumericCodomainError("cannot differentiate non-numeric sensor " + base.id);
  }
  SensingFunctionDecl d;
  d.id = id.value_or("d" + base.id);
  d.kind = SensorKind::kDerivative;
  d.domain = base.domain;
  d.codomain = base.codomain.difference_set();
  d.text = "windowed difference of " + base.id;
  d.base = base.id;
  d.window = window;
  d.entities = base.entities;
  return d;
}

SensingFunctionDecl relation_sensor(const SensorCatalog& catalog, const std::string& relation_id,
                                    const std::string& a, const std::string& b,
                                    std::optional<std::string> id) {
  const RelationDecl& rel = catalog.relation(relation_id);
  if (std::find(rel.left.begin(), rel.left.end(), a) == rel.left.end()) {
    throw EntityNotInSetError(a + " is not a left entity of relation " + relation_id);
  }
  if (std::find(rel.right.begin(), rel.right.end(), b) == rel.right.end()) {
    throw EntityNotInSetError(b + " is not a right entity of relation " + relation_id);
  }
  SensingFunctionDecl d;
  d.id = id.value_or(relation_id + "[" + a + "," + b + "]");
  d.kind = SensorKind::kRelation;
  d.domain = Domain::singleton();
  d.codomain = Codomain::boolean();
  d.text = "indicator of " + a + " " + (rel.text.empty() ? relation_id : rel.text) + " " + b;
  d.relation = relation_id;
  d.entities = {a, b};
  return d;
}

}  // namespace analogy
