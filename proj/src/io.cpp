#include "analogy/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "analogy/errors.hpp"

namespace analogy {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing \"" + key + "\"");
  return *it;
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) fail(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::string optional_string(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) fail(where + ": \"" + key + "\" must be a string");
  return it->get<std::string>();
}

double number_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number()) fail(where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

const Json& array_field(const Json& j, const char* key, const std::string& where,
                        bool required = true) {
  static const Json kEmpty = Json::array();
  if (!j.is_object()) fail(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) {
    if (required) fail(where + ": missing \"" + key + "\"");
    return kEmpty;
  }
  if (!it->is_array()) fail(where + ": \"" + key + "\" must be an array");
  return *it;
}

std::vector<std::string> strings(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const Json& e : j) {
    if (!e.is_string()) fail(where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; })) {
      fail(where + ": unexpected key \"" + it.key() + "\"");
    }
  }
}

VertexPair pair_from_json(const Json& j, const std::string& where) {
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
    return {j[0].get<std::string>(), j[1].get<std::string>()};
  }
  if (j.is_object()) return {string_field(j, "src", where), string_field(j, "dst", where)};
  fail(where + ": expected [src, dst] or {\"src\", \"dst\"}");
}

std::vector<VertexPair> pairs_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of arrows");
  std::vector<VertexPair> out;
  for (const Json& e : j) out.push_back(pair_from_json(e, where));
  return out;
}

Json pairs_to_json(const std::vector<VertexPair>& pairs) {
  Json out = Json::array();
  for (const auto& [s, t] : pairs) out.push_back(Json::array({s, t}));
  return out;
}

StateVector labels_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": labels must be an array");
  StateVector out;
  for (const Json& e : j) {
    if (!out.insert(label_from_json(e)).second) {
      fail(where + ": duplicate label " + label_from_json(e).to_string());
    }
  }
  return out;
}

Json labels_to_json(const StateVector& labels) {
  Json out = Json::array();
  for (const Label& l : labels) out.push_back(label_to_json(l));
  return out;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) fail("cannot open " + p.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(p.string() + ": " + e.what());
  }
}

Json value_to_json(const Value& v) {
  if (!v.is_number()) return v.text();
  const double d = v.number();
  if (d == static_cast<double>(static_cast<long long>(d))) return static_cast<long long>(d);
  return d;
}

Value value_from_json(const Json& j) {
  if (j.is_number()) return Value(j.get<double>());
  if (j.is_string()) return Value(j.get<std::string>());
  fail("a value must be a number or a string");
}

Json label_to_json(const Label& l) {
  return Json{{"sensor", l.sensor}, {"arg", l.arg}, {"value", value_to_json(l.value)}};
}

Label label_from_json(const Json& j) {
  if (j.is_array() && j.size() == 3 && j[0].is_string() && j[1].is_string()) {
    return {j[0].get<std::string>(), j[1].get<std::string>(), value_from_json(j[2])};
  }
  const std::string where = "label";
  Label l;
  l.sensor = string_field(j, "sensor", where);
  l.arg = j.contains("arg") ? string_field(j, "arg", where) : std::string(kBullet);
  l.value = value_from_json(field(j, "value", where));
  return l;
}

Olog olog_from_json(const Json& j) {
  return guarded([&] {
    Olog o;
    for (const Json& t : array_field(j, "types", "olog")) {
      o.add_type(string_field(t, "id", "olog type"), optional_string(t, "text", "olog type"));
    }
    for (const Json& a : array_field(j, "aspects", "olog", false)) {
      o.add_aspect(string_field(a, "id", "aspect"), optional_string(a, "text", "aspect"),
                   string_field(a, "src", "aspect"), string_field(a, "dst", "aspect"));
    }
    for (const Json& p : array_field(j, "pullbacks", "olog", false)) {
      o.add_pullback({string_field(p, "apex", "pullback"), string_field(p, "p1", "pullback"),
                      string_field(p, "p2", "pullback"), string_field(p, "f", "pullback"),
                      string_field(p, "g", "pullback")});
    }
    return o;
  });
}

Json olog_to_json(const Olog& o) {
  Json types = Json::array();
  for (const OlogType& t : o.types()) types.push_back({{"id", t.id}, {"text", t.text}});
  Json aspects = Json::array();
  for (const Aspect& a : o.aspects()) {
    aspects.push_back({{"id", a.id}, {"text", a.text}, {"src", a.source}, {"dst", a.target}});
  }
  Json pullbacks = Json::array();
  for (const PullbackSquare& p : o.pullbacks()) {
    pullbacks.push_back({{"apex", p.apex}, {"p1", p.p1}, {"p2", p.p2}, {"f", p.f}, {"g", p.g}});
  }
  return Json{{"types", types}, {"aspects", aspects}, {"pullbacks", pullbacks}};
}

Olog load_olog(const std::filesystem::path& p) { return olog_from_json(read_json_file(p)); }

SensingFunctionDecl sensor_from_json(const Json& j) {
  return guarded([&] {
    const std::string where = "sensor";
    SensingFunctionDecl d;
    d.id = string_field(j, "id", where);
    d.kind = sensor_kind_from_string(j.contains("kind") ? string_field(j, "kind", where) : "base");
    if (j.contains("domain")) d.domain.args = strings(j.at("domain"), where + " domain");
    if (j.contains("codomain")) {
      const Json& c = j.at("codomain");
      if (c.is_array()) {
        for (const Json& v : c) d.codomain.values.push_back(value_from_json(v));
      } else if (c.is_object() && c.contains("interval")) {
        const Json& iv = c.at("interval");
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
          fail(where + " " + d.id + ": interval must be [lo, hi]");
        }
        d.codomain.interval = std::make_pair(iv[0].get<double>(), iv[1].get<double>());
      } else {
        fail(where + " " + d.id + ": codomain must be a list of values or {\"interval\"}");
      }
    } else if (d.kind == SensorKind::kRelation) {
      d.codomain = Codomain::boolean();
    }
    d.text = optional_string(j, "text", where);
    d.base = optional_string(j, "base", where);
    if (j.contains("window")) d.window = number_field(j, "window", where);
    d.relation = optional_string(j, "relation", where);
    if (j.contains("entities")) d.entities = strings(j.at("entities"), where + " entities");
    const std::string type = optional_string(j, "olog_type", where);
    if (!type.empty()) d.olog_type = type;
    return d;
  });
}

Json sensor_to_json(const SensingFunctionDecl& d) {
  Json j{{"id", d.id}, {"kind", to_string(d.kind)}, {"domain", d.domain.args}};
  if (d.codomain.interval) {
    j["codomain"] = {{"interval", {d.codomain.interval->first, d.codomain.interval->second}}};
  } else {
    Json values = Json::array();
    for (const Value& v : d.codomain.values) values.push_back(value_to_json(v));
    j["codomain"] = values;
  }
  if (!d.text.empty()) j["text"] = d.text;
  if (d.kind == SensorKind::kDerivative) {
    j["base"] = d.base;
    j["window"] = d.window;
  }
  if (!d.relation.empty()) j["relation"] = d.relation;
  if (!d.entities.empty()) j["entities"] = d.entities;
  if (d.olog_type) j["olog_type"] = *d.olog_type;
  return j;
}

SensorCatalog catalog_from_json(const Json& sensors, const Json& relations) {
  return guarded([&] {
    SensorCatalog cat;
    if (!relations.is_null()) {
      if (!relations.is_array()) fail("relations must be an array");
      for (const Json& r : relations) {
        RelationDecl rel;
        rel.id = string_field(r, "id", "relation");
        rel.text = optional_string(r, "text", "relation");
        if (r.contains("left")) rel.left = strings(r.at("left"), "relation left");
        if (r.contains("right")) rel.right = strings(r.at("right"), "relation right");
        cat.add_relation(std::move(rel));
      }
    }
    if (sensors.is_null()) return cat;
    if (!sensors.is_array()) fail("sensors must be an array");
    std::vector<SensingFunctionDecl> pending;
    for (const Json& s : sensors) pending.push_back(sensor_from_json(s));
    // Bases first; derivatives once their base is present.
    while (!pending.empty()) {
      const std::size_t before = pending.size();
      std::vector<SensingFunctionDecl> rest;
      for (SensingFunctionDecl& d : pending) {
        if (d.kind == SensorKind::kDerivative && !cat.contains(d.base)) {
          rest.push_back(std::move(d));
          continue;
        }
        if (d.kind == SensorKind::kDerivative && d.codomain.values.empty() &&
            !d.codomain.interval) {
          d.codomain = cat.get(d.base).codomain.difference_set();
        }
        cat.add(std::move(d));
      }
      if (rest.size() == before) throw UnknownSensorError(rest.front().base);
      pending = std::move(rest);
    }
    return cat;
  });
}

WiringDiagram wd_from_json(const Json& j) {
  return guarded([&] {
    if (!j.is_object()) fail("wiring diagram: expected an object");
    auto catalog = std::make_shared<const SensorCatalog>(
        catalog_from_json(j.contains("sensors") ? j.at("sensors") : Json(),
                          j.contains("relations") ? j.at("relations") : Json()));
    std::vector<VertexId> vertices;
    std::map<VertexId, StateVector> labels;
    for (const Json& v : array_field(j, "vertices", "wiring diagram")) {
      const std::string id = string_field(v, "id", "vertex");
      vertices.push_back(id);
      labels[id] = labels_from_json(v.contains("labels") ? v.at("labels") : Json::array(),
                                    "vertex " + id);
    }
    std::vector<Arrow> arrows;
    for (const Json& a : array_field(j, "arrows", "wiring diagram", false)) {
      Arrow arrow;
      arrow.source = string_field(a, "src", "arrow");
      arrow.target = string_field(a, "dst", "arrow");
      arrow.id = optional_string(a, "id", "arrow");
      arrows.push_back(std::move(arrow));
    }
    DirectedGraph g(vertices, {});
    for (const Arrow& a : arrows) g.add_arrow(a.source, a.target, a.id);
    return WiringDiagram(std::move(g), std::move(labels), std::move(catalog));
  });
}

Json wd_to_json(const WiringDiagram& w) {
  Json sensors = Json::array();
  for (const auto& [id, d] : w.catalog().sensors()) sensors.push_back(sensor_to_json(d));
  Json relations = Json::array();
  for (const auto& [id, r] : w.catalog().relations()) {
    relations.push_back({{"id", r.id}, {"text", r.text}, {"left", r.left}, {"right", r.right}});
  }
  Json vertices = Json::array();
  for (const VertexId& v : w.graph().vertices()) {
    vertices.push_back({{"id", v}, {"labels", labels_to_json(w.state_vector(v))}});
  }
  Json arrows = Json::array();
  for (const Arrow& a : w.graph().arrows()) {
    arrows.push_back({{"id", a.id}, {"src", a.source}, {"dst", a.target}});
  }
  Json j{{"sensors", sensors}};
  if (!relations.empty()) j["relations"] = relations;
  j["vertices"] = vertices;
  j["arrows"] = arrows;
  return j;
}

WiringDiagram load_wd(const std::filesystem::path& p) { return wd_from_json(read_json_file(p)); }

CostFunction cost_from_json(const Json& j, const std::filesystem::path& base_dir) {
  return guarded([&] {
    const std::string where = "cost config";
    if (!j.is_object()) fail(where + ": expected an object");
    check_keys(j,
               {"note", "vertex", "label", "change", "arrow", "graph", "label_change", "olog",
                "edge_costs", "label_types", "sensor_types"},
               where);
    CostFunction c;
    if (j.contains("vertex")) c.vertex = number_field(j, "vertex", where);
    if (j.contains("label")) c.label = number_field(j, "label", where);
    if (j.contains("change")) c.change = number_field(j, "change", where);
    if (j.contains("arrow")) c.arrow = number_field(j, "arrow", where);
    if (j.contains("graph")) c.graph = number_field(j, "graph", where);
    const std::string rule = j.contains("label_change") ? string_field(j, "label_change", where)
                                                        : std::string("flat");
    if (rule == "olog") {
      OlogLabelCost o;
      const Json& ref = field(j, "olog", where);
      if (ref.is_string()) {
        std::filesystem::path p = ref.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        o.olog = std::make_shared<const Olog>(load_olog(p));
      } else {
        o.olog = std::make_shared<const Olog>(olog_from_json(ref));
      }
      if (j.contains("edge_costs")) {
        const Json& ec = j.at("edge_costs");
        o.edge_cost = EdgeCost(ec.contains("default") ? number_field(ec, "default", "edge_costs")
                                                      : 1.0);
        if (ec.contains("aspects")) {
          for (const auto& [id, v] : ec.at("aspects").items()) {
            if (!v.is_number()) fail("edge_costs: cost of " + id + " must be a number");
            o.edge_cost.set(id, v.get<double>());
          }
        }
      }
      for (const Json& e : array_field(j, "label_types", where, false)) {
        const Label l = label_from_json(field(e, "label", "label_types"));
        if (!o.label_types.emplace(l, string_field(e, "type", "label_types")).second) {
          fail("label_types: duplicate label " + l.to_string());
        }
      }
      if (j.contains("sensor_types")) {
        for (const auto& [sensor, type] : j.at("sensor_types").items()) {
          if (!type.is_string()) fail("sensor_types: type of " + sensor + " must be a string");
          o.sensor_types.emplace(sensor, type.get<std::string>());
        }
      }
      c.olog = std::move(o);
    } else if (rule != "flat") {
      fail(where + ": label_change must be \"flat\" or \"olog\"");
    }
    c.validate();
    return c;
  });
}

Json cost_to_json(const CostFunction& c) {
  Json j{{"vertex", c.vertex}, {"label", c.label}, {"change", c.change},
         {"arrow", c.arrow},   {"graph", c.graph}};
  if (!c.olog) {
    j["label_change"] = "flat";
    return j;
  }
  j["label_change"] = "olog";
  j["olog"] = olog_to_json(*c.olog->olog);
  Json aspects = Json::object();
  for (const auto& [id, v] : c.olog->edge_cost.overrides()) aspects[id] = v;
  j["edge_costs"] = {{"default", c.olog->edge_cost.default_cost()}, {"aspects", aspects}};
  Json types = Json::array();
  for (const auto& [l, t] : c.olog->label_types) {
    types.push_back({{"label", label_to_json(l)}, {"type", t}});
  }
  j["label_types"] = types;
  Json sensors = Json::object();
  for (const auto& [s, t] : c.olog->sensor_types) sensors[s] = t;
  j["sensor_types"] = sensors;
  return j;
}

CostFunction load_cost(const std::filesystem::path& p) {
  return cost_from_json(read_json_file(p), p.parent_path());
}

Json edit_op_to_json(const EditOp& e) {
  Json j{{"kind", to_string(e.kind)}};
  switch (e.kind) {
    case EditKind::kAddVertex:
    case EditKind::kDeleteVertex:
      j["vertex"] = e.vertex;
      if (e.kind == EditKind::kAddVertex || !e.labels.empty()) {
        j["labels"] = labels_to_json(e.labels);
        j["in"] = e.in;
        j["out"] = e.out;
      }
      break;
    case EditKind::kAddLabel:
    case EditKind::kDeleteLabel:
      j["vertex"] = e.vertex;
      if (e.label) j["label"] = label_to_json(*e.label);
      break;
    case EditKind::kChangeLabel:
      j["vertex"] = e.vertex;
      if (e.label) j["label"] = label_to_json(*e.label);
      if (e.new_label) j["new_label"] = label_to_json(*e.new_label);
      break;
    case EditKind::kAddArrow:
    case EditKind::kDeleteArrow:
      j["arrow"] = Json::array({e.arrow.first, e.arrow.second});
      break;
    case EditKind::kGeneralizeGraph:
    case EditKind::kSpecializeGraph:
      j["graph"] = pairs_to_json(e.graph);
      if (e.previous) j["previous"] = pairs_to_json(*e.previous);
      break;
  }
  return j;
}

EditOp edit_op_from_json(const Json& j) {
  return guarded([&] {
    const std::string where = "edit op";
    EditOp e;
    e.kind = edit_kind_from_string(string_field(j, "kind", where));
    switch (e.kind) {
      case EditKind::kAddVertex:
      case EditKind::kDeleteVertex:
        e.vertex = string_field(j, "vertex", where);
        if (j.contains("labels")) e.labels = labels_from_json(j.at("labels"), where);
        if (j.contains("in")) e.in = strings(j.at("in"), where + " in");
        if (j.contains("out")) e.out = strings(j.at("out"), where + " out");
        std::sort(e.in.begin(), e.in.end());
        std::sort(e.out.begin(), e.out.end());
        break;
      case EditKind::kAddLabel:
      case EditKind::kDeleteLabel:
        e.vertex = string_field(j, "vertex", where);
        e.label = label_from_json(field(j, "label", where));
        break;
      case EditKind::kChangeLabel:
        e.vertex = string_field(j, "vertex", where);
        e.label = label_from_json(field(j, "label", where));
        e.new_label = label_from_json(field(j, "new_label", where));
        break;
      case EditKind::kAddArrow:
      case EditKind::kDeleteArrow:
        e.arrow = pair_from_json(field(j, "arrow", where), where);
        break;
      case EditKind::kGeneralizeGraph:
      case EditKind::kSpecializeGraph:
        e.graph = pairs_from_json(field(j, "graph", where), where);
        std::sort(e.graph.begin(), e.graph.end());
        if (j.contains("previous")) {
          auto prev = pairs_from_json(j.at("previous"), where);
          std::sort(prev.begin(), prev.end());
          e.previous = std::move(prev);
        }
        break;
    }
    return e;
  });
}

EditOp EditPathRecord::effective() const { return inverse ? invert(op) : op; }

EditPath EditPathFile::path() const {
  std::vector<EditOp> ops;
  for (const EditPathRecord& r : records) ops.push_back(r.effective());
  return EditPath(std::move(ops));
}

std::vector<std::string> EditPathFile::names() const {
  std::vector<std::string> out;
  for (const EditPathRecord& r : records) out.push_back(r.name + (r.inverse ? "^-1" : ""));
  return out;
}

EditPathFile edit_path_from_json(const Json& j) {
  return guarded([&] {
    EditPathFile f;
    f.note = optional_string(j, "note", "edit path");
    for (const Json& r : array_field(j, "ops", "edit path")) {
      EditPathRecord rec;
      rec.name = optional_string(r, "name", "edit op");
      if (r.contains("inverse")) {
        if (!r.at("inverse").is_boolean()) fail("edit op: \"inverse\" must be a boolean");
        rec.inverse = r.at("inverse").get<bool>();
      }
      rec.op = edit_op_from_json(r);
      f.records.push_back(std::move(rec));
    }
    return f;
  });
}

Json edit_path_to_json(const EditPathFile& f) {
  Json ops = Json::array();
  for (const EditPathRecord& r : f.records) {
    Json j = edit_op_to_json(r.op);
    if (!r.name.empty()) j["name"] = r.name;
    if (r.inverse) j["inverse"] = true;
    ops.push_back(std::move(j));
  }
  Json out = Json::object();
  if (!f.note.empty()) out["note"] = f.note;
  out["ops"] = ops;
  return out;
}

Json edit_path_to_json(const EditPath& p) {
  Json ops = Json::array();
  for (const EditOp& e : p.ops()) ops.push_back(edit_op_to_json(e));
  return Json{{"ops", ops}};
}

EditPathFile load_edit_path(const std::filesystem::path& p) {
  return edit_path_from_json(read_json_file(p));
}

Trace trace_from_jsonl(std::istream& in) {
  std::vector<Sample> samples;
  std::string unit = "s";
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "trace line " + std::to_string(lineno);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(where + ": " + e.what());
    }
    if (j.is_object() && j.contains("time_unit") && !j.contains("t")) {
      if (!samples.empty()) fail(where + ": time_unit must come first");
      unit = string_field(j, "time_unit", where);
      continue;
    }
    guarded([&] {
      Sample s;
      s.t = number_field(j, "t", where);
      s.sensor = string_field(j, "sensor", where);
      s.arg = j.contains("arg") ? string_field(j, "arg", where) : std::string(kBullet);
      s.value = value_from_json(field(j, "value", where));
      samples.push_back(std::move(s));
      return 0;
    });
  }
  return Trace(std::move(samples), unit);
}

Trace load_trace(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) fail("cannot open " + p.string());
  return trace_from_jsonl(in);
}

}  // namespace analogy
