#include "analogy/edit.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "analogy/errors.hpp"
#include "analogy/wd_category.hpp"

namespace analogy {

const char* to_string(EditKind k) noexcept {
  switch (k) {
    case EditKind::kAddVertex: return "add-vertex";
    case EditKind::kDeleteVertex: return "delete-vertex";
    case EditKind::kAddLabel: return "add-label";
    case EditKind::kDeleteLabel: return "delete-label";
    case EditKind::kChangeLabel: return "change-label";
    case EditKind::kAddArrow: return "add-arrow";
    case EditKind::kDeleteArrow: return "delete-arrow";
    case EditKind::kGeneralizeGraph: return "generalize-graph";
    case EditKind::kSpecializeGraph: return "specialize-graph";
  }
  return "?";
}

const char* roman(EditKind k) noexcept {
  static constexpr const char* kNames[] = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"};
  return kNames[static_cast<int>(k)];
}

EditKind edit_kind_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(EditKind::kSpecializeGraph); ++i) {
    const auto k = static_cast<EditKind>(i);
    if (s == to_string(k) || s == roman(k)) return k;
  }
  throw ParseError("unknown edit operation kind: " + s);
}

EditKind inverse_kind(EditKind k) noexcept {
  switch (k) {
    case EditKind::kAddVertex: return EditKind::kDeleteVertex;
    case EditKind::kDeleteVertex: return EditKind::kAddVertex;
    case EditKind::kAddLabel: return EditKind::kDeleteLabel;
    case EditKind::kDeleteLabel: return EditKind::kAddLabel;
    case EditKind::kChangeLabel: return EditKind::kChangeLabel;
    case EditKind::kAddArrow: return EditKind::kDeleteArrow;
    case EditKind::kDeleteArrow: return EditKind::kAddArrow;
    case EditKind::kGeneralizeGraph: return EditKind::kSpecializeGraph;
    case EditKind::kSpecializeGraph: return EditKind::kGeneralizeGraph;
  }
  return k;
}

namespace {

std::vector<VertexPair> sorted_pairs(std::vector<VertexPair> p) {
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<VertexId> sorted_ids(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

EditOp EditOp::add_vertex(VertexId v, StateVector labels, std::vector<VertexId> in,
                          std::vector<VertexId> out) {
  EditOp e;
  e.kind = EditKind::kAddVertex;
  e.vertex = std::move(v);
  e.labels = std::move(labels);
  e.in = sorted_ids(std::move(in));
  e.out = sorted_ids(std::move(out));
  return e;
}

EditOp EditOp::delete_vertex(VertexId v) {
  EditOp e;
  e.kind = EditKind::kDeleteVertex;
  e.vertex = std::move(v);
  return e;
}

EditOp EditOp::add_label(VertexId v, Label l) {
  EditOp e;
  e.kind = EditKind::kAddLabel;
  e.vertex = std::move(v);
  e.label = std::move(l);
  return e;
}

EditOp EditOp::delete_label(VertexId v, Label l) {
  EditOp e = add_label(std::move(v), std::move(l));
  e.kind = EditKind::kDeleteLabel;
  return e;
}

EditOp EditOp::change_label(VertexId v, Label from, Label to) {
  EditOp e;
  e.kind = EditKind::kChangeLabel;
  e.vertex = std::move(v);
  e.label = std::move(from);
  e.new_label = std::move(to);
  return e;
}

EditOp EditOp::add_arrow(VertexId s, VertexId t) {
  EditOp e;
  e.kind = EditKind::kAddArrow;
  e.arrow = {std::move(s), std::move(t)};
  return e;
}

EditOp EditOp::delete_arrow(VertexId s, VertexId t) {
  EditOp e = add_arrow(std::move(s), std::move(t));
  e.kind = EditKind::kDeleteArrow;
  return e;
}

EditOp EditOp::generalize(std::vector<VertexPair> replacement) {
  EditOp e;
  e.kind = EditKind::kGeneralizeGraph;
  e.graph = sorted_pairs(std::move(replacement));
  return e;
}

EditOp EditOp::specialize(std::vector<VertexPair> replacement) {
  EditOp e = generalize(std::move(replacement));
  e.kind = EditKind::kSpecializeGraph;
  return e;
}

bool EditOp::is_complete() const noexcept {
  switch (kind) {
    case EditKind::kDeleteVertex: return !labels.empty();
    case EditKind::kGeneralizeGraph:
    case EditKind::kSpecializeGraph: return previous.has_value();
    default: return true;
  }
}

std::string EditOp::describe() const {
  auto pairs_text = [](const std::vector<VertexPair>& ps) {
    std::string s = "{";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) s += ", ";
      s += ps[i].first + "->" + ps[i].second;
    }
    return s + "}";
  };
  auto ids_text = [](const std::vector<VertexId>& ids) {
    std::string s = "[";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) s += ",";
      s += ids[i];
    }
    return s + "]";
  };
  std::string text = std::string("(") + roman(kind) + ") " + to_string(kind) + " ";
  switch (kind) {
    case EditKind::kAddVertex:
      text += vertex + " " + to_string(labels);
      if (!in.empty()) text += " in " + ids_text(in);
      if (!out.empty()) text += " out " + ids_text(out);
      break;
    case EditKind::kDeleteVertex:
      text += vertex;
      if (!labels.empty()) text += " " + to_string(labels);
      break;
    case EditKind::kAddLabel:
    case EditKind::kDeleteLabel:
      text += vertex + " " + (label ? label->to_string() : "?");
      break;
    case EditKind::kChangeLabel:
      text += vertex + " " + (label ? label->to_string() : "?") + " => " +
             (new_label ? new_label->to_string() : "?");
      break;
    case EditKind::kAddArrow:
    case EditKind::kDeleteArrow:
      text += arrow.first + "->" + arrow.second;
      break;
    case EditKind::kGeneralizeGraph:
    case EditKind::kSpecializeGraph:
      text += pairs_text(graph);
      break;
  }
  return text;
}

namespace {

void require_vertex(const WiringDiagram& w, const VertexId& v) {
  if (!w.graph().has_vertex(v)) throw InvalidOpError(InvalidOpReason::kUnknownVertex, v);
}

void require_typed(const WiringDiagram& w, const Label& l) {
  try {
    w.catalog().check_label(l);
  } catch (const Error& e) {
    throw InvalidOpError(InvalidOpReason::kIllTypedLabel, e.what());
  }
}

void require_edit_space_graph(const DirectedGraph& g) {
  if (!is_acyclic(g)) throw InvalidOpError(InvalidOpReason::kWouldBreakWd2, "result has a cycle");
  if (!is_skeleton(g)) {
    throw InvalidOpError(InvalidOpReason::kWouldBreakSkeleton, "result has a shortcut arrow");
  }
}

std::vector<VertexId> predecessors(const DirectedGraph& g, const VertexId& v) {
  std::vector<VertexId> out;
  for (const Arrow& a : g.arrows()) {
    if (a.target == v && a.source != v) out.push_back(a.source);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> successors(const DirectedGraph& g, const VertexId& v) {
  std::vector<VertexId> out;
  for (const Arrow& a : g.arrows()) {
    if (a.source == v && a.target != v) out.push_back(a.target);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SkeletonWdGraph replacement_graph(const WiringDiagram& w, const std::vector<VertexPair>& pairs) {
  DirectedGraph g;
  try {
    g = DirectedGraph::from_pairs(w.graph().vertices(), pairs);
  } catch (const UnknownIdError& e) {
    throw InvalidOpError(InvalidOpReason::kUnknownVertex, e.what());
  }
  require_edit_space_graph(g);
  return SkeletonWdGraph::from_graph(std::move(g));
}

void apply_graph_op(WiringDiagram& w, const EditOp& e) {
  if (e.previous && sorted_pairs(*e.previous) != w.graph().arrow_pairs()) {
    throw InvalidOpError(InvalidOpReason::kRecordMismatch, "current arrows differ from record");
  }
  const SkeletonWdGraph current = SkeletonWdGraph::from_graph(w.graph());
  const SkeletonWdGraph next = replacement_graph(w, e.graph);
  const bool general = e.kind == EditKind::kGeneralizeGraph;
  const SkeletonWdGraph& from = general ? current : next;
  const SkeletonWdGraph& to = general ? next : current;
  const auto m = morphism_exists(from, to);
  if (!m) {
    const bool reversed = morphism_exists(to, from).has_value();
    throw InvalidOpError(reversed ? InvalidOpReason::kWrongDirection
                                  : InvalidOpReason::kNotIrreducible,
                         reversed ? "morphism points the other way" : "graphs are incomparable");
  }
  if (!is_irreducible(*m)) {
    throw InvalidOpError(InvalidOpReason::kNotIrreducible,
                         m->is_identity() ? "replacement equals the current graph"
                                          : "an intermediate graph exists");
  }
  w.replace_arrows(e.graph);
}

}  // namespace

WiringDiagram apply_op(const WiringDiagram& w, const EditOp& e) {
  WiringDiagram out = w;
  switch (e.kind) {
    case EditKind::kAddVertex: {
      if (w.graph().has_vertex(e.vertex)) {
        throw InvalidOpError(InvalidOpReason::kDuplicateVertex, e.vertex);
      }
      if (e.labels.empty()) throw InvalidOpError(InvalidOpReason::kEmptyStateVector, e.vertex);
      for (const Label& l : e.labels) require_typed(w, l);
      for (const VertexId& u : e.in) require_vertex(w, u);
      for (const VertexId& u : e.out) require_vertex(w, u);
      out.add_vertex(e.vertex, e.labels);
      for (const VertexId& u : e.in) out.mutable_graph().add_arrow(u, e.vertex);
      for (const VertexId& u : e.out) out.mutable_graph().add_arrow(e.vertex, u);
      require_edit_space_graph(out.graph());
      break;
    }
    case EditKind::kDeleteVertex: {
      require_vertex(w, e.vertex);
      if (w.graph().vertex_count() == 1) {
        throw InvalidOpError(InvalidOpReason::kWouldEmptyDiagram, e.vertex);
      }
      if (!e.labels.empty()) {
        if (w.state_vector(e.vertex) != e.labels ||
            predecessors(w.graph(), e.vertex) != sorted_ids(e.in) ||
            successors(w.graph(), e.vertex) != sorted_ids(e.out)) {
          throw InvalidOpError(InvalidOpReason::kRecordMismatch, e.vertex);
        }
      }
      out.remove_vertex(e.vertex);
      break;
    }
    case EditKind::kAddLabel: {
      require_vertex(w, e.vertex);
      if (!e.label) throw InvalidOpError(InvalidOpReason::kUnknownLabel, "missing label");
      if (w.state_vector(e.vertex).contains(*e.label)) {
        throw InvalidOpError(InvalidOpReason::kDuplicateLabel, e.label->to_string());
      }
      require_typed(w, *e.label);
      out.mutable_state_vector(e.vertex).insert(*e.label);
      break;
    }
    case EditKind::kDeleteLabel: {
      require_vertex(w, e.vertex);
      if (!e.label || !w.state_vector(e.vertex).contains(*e.label)) {
        throw InvalidOpError(InvalidOpReason::kUnknownLabel, e.label ? e.label->to_string() : "");
      }
      if (w.state_vector(e.vertex).size() == 1) {
        throw InvalidOpError(InvalidOpReason::kWouldEmptyStateVector, e.vertex);
      }
      out.mutable_state_vector(e.vertex).erase(*e.label);
      break;
    }
    case EditKind::kChangeLabel: {
      require_vertex(w, e.vertex);
      if (!e.label || !w.state_vector(e.vertex).contains(*e.label)) {
        throw InvalidOpError(InvalidOpReason::kUnknownLabel, e.label ? e.label->to_string() : "");
      }
      if (!e.new_label || w.state_vector(e.vertex).contains(*e.new_label)) {
        throw InvalidOpError(InvalidOpReason::kDuplicateLabel,
                             e.new_label ? e.new_label->to_string() : "missing new label");
      }
      require_typed(w, *e.new_label);
      StateVector& sv = out.mutable_state_vector(e.vertex);
      sv.erase(*e.label);
      sv.insert(*e.new_label);
      break;
    }
    case EditKind::kAddArrow: {
      require_vertex(w, e.arrow.first);
      require_vertex(w, e.arrow.second);
      out.mutable_graph().add_arrow(e.arrow.first, e.arrow.second);
      require_edit_space_graph(out.graph());
      break;
    }
    case EditKind::kDeleteArrow: {
      const Arrow* a = w.graph().find_arrow(e.arrow.first, e.arrow.second);
      if (!a) {
        throw InvalidOpError(InvalidOpReason::kUnknownArrow, e.arrow.first + "->" + e.arrow.second);
      }
      out.mutable_graph().remove_arrow(a->id);
      break;
    }
    case EditKind::kGeneralizeGraph:
    case EditKind::kSpecializeGraph:
      apply_graph_op(out, e);
      break;
  }
  return out;
}

EditOp complete_op(const EditOp& e, const WiringDiagram& context) {
  EditOp c = e;
  switch (e.kind) {
    case EditKind::kDeleteVertex:
      require_vertex(context, e.vertex);
      c.labels = context.state_vector(e.vertex);
      c.in = predecessors(context.graph(), e.vertex);
      c.out = successors(context.graph(), e.vertex);
      break;
    case EditKind::kGeneralizeGraph:
    case EditKind::kSpecializeGraph:
      c.previous = context.graph().arrow_pairs();
      break;
    default:
      break;
  }
  return c;
}

EditOp invert(const EditOp& e) {
  if (!e.is_complete()) {
    throw InvalidOpError(InvalidOpReason::kRecordMismatch,
                         std::string("cannot invert ") + to_string(e.kind) + " without its record");
  }
  switch (e.kind) {
    case EditKind::kAddVertex: {
      EditOp r = EditOp::delete_vertex(e.vertex);
      r.labels = e.labels;
      r.in = e.in;
      r.out = e.out;
      return r;
    }
    case EditKind::kDeleteVertex:
      return EditOp::add_vertex(e.vertex, e.labels, e.in, e.out);
    case EditKind::kAddLabel:
      return EditOp::delete_label(e.vertex, *e.label);
    case EditKind::kDeleteLabel:
      return EditOp::add_label(e.vertex, *e.label);
    case EditKind::kChangeLabel:
      return EditOp::change_label(e.vertex, *e.new_label, *e.label);
    case EditKind::kAddArrow:
      return EditOp::delete_arrow(e.arrow.first, e.arrow.second);
    case EditKind::kDeleteArrow:
      return EditOp::add_arrow(e.arrow.first, e.arrow.second);
    case EditKind::kGeneralizeGraph:
    case EditKind::kSpecializeGraph: {
      EditOp r = e.kind == EditKind::kGeneralizeGraph ? EditOp::specialize(*e.previous)
                                                       : EditOp::generalize(*e.previous);
      r.previous = e.graph;
      return r;
    }
  }
  return e;
}

EditOp inverse_op(const EditOp& e, const WiringDiagram& context) {
  apply_op(context, e);
  return invert(complete_op(e, context));
}

std::optional<TypeId> OlogLabelCost::type_of(const Label& l) const {
  if (auto it = label_types.find(l); it != label_types.end()) return it->second;
  if (auto it = sensor_types.find(l.sensor); it != sensor_types.end()) return it->second;
  return std::nullopt;
}

void OlogLabelCost::add_sensor_types(const SensorCatalog& catalog) {
  for (const auto& [id, decl] : catalog.sensors()) {
    if (decl.olog_type) sensor_types.emplace(id, *decl.olog_type);
  }
}

void CostFunction::validate() const {
  for (double c : {vertex, label, change, arrow, graph}) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw NonpositiveCostError("edit operation costs must be positive and finite");
    }
  }
  if (olog && !olog->olog) throw InvalidArgumentError("olog-backed cost rule without an olog");
}

double CostFunction::change_cost(const Label& from, const Label& to) const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (!olog) return change;
  const auto a = olog->type_of(from);
  const auto b = olog->type_of(to);
  if (!a || !b || !olog->olog->has_type(*a) || !olog->olog->has_type(*b)) return kInf;
  const OlogDistance d = olog_distance(*olog->olog, olog->edge_cost, *a, *b);
  if (d.is_infinite() || !(d.value() > 0.0)) return kInf;
  return d.value();
}

double CostFunction::cost(const EditOp& e) const {
  switch (e.kind) {
    case EditKind::kAddVertex:
    case EditKind::kDeleteVertex: return vertex;
    case EditKind::kAddLabel:
    case EditKind::kDeleteLabel: return label;
    case EditKind::kAddArrow:
    case EditKind::kDeleteArrow: return arrow;
    case EditKind::kGeneralizeGraph:
    case EditKind::kSpecializeGraph: return graph;
    case EditKind::kChangeLabel: {
      if (!e.label || !e.new_label) {
        throw InvalidOpError(InvalidOpReason::kUnknownLabel, "change-label without labels");
      }
      const double c = change_cost(*e.label, *e.new_label);
      if (!std::isfinite(c)) {
        throw InvalidOpError(InvalidOpReason::kUnpricedLabel,
                             e.label->to_string() + " => " + e.new_label->to_string());
      }
      return c;
    }
  }
  return vertex;
}

EditPath::EditPath(std::vector<EditOp> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) throw EmptyPathError();
}

ReplayResult replay_path(const WiringDiagram& w, const EditPath& p, const CostFunction& c) {
  ReplayResult r{w, 0.0, {}};
  for (std::size_t i = 0; i < p.size(); ++i) {
    try {
      const double cost = c.cost(p.ops()[i]);
      r.result = apply_op(r.result, p.ops()[i]);
      r.op_costs.push_back(cost);
      r.total_cost += cost;
    } catch (const InvalidOpError& e) {
      throw InvalidOpError(e.reason(), e.detail(), i);
    }
  }
  return r;
}

namespace {

struct IsoMatcher {
  std::size_t n;
  std::vector<const StateVector*> la, lb;
  std::vector<std::vector<int>> ma, mb;  // arrow multiplicities
  std::vector<int> map, used;

  bool extend(std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || *la[i] != *lb[j] || ma[i][i] != mb[j][j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        const auto fk = static_cast<std::size_t>(map[k]);
        ok = ma[i][k] == mb[j][fk] && ma[k][i] == mb[fk][j];
      }
      if (!ok) continue;
      map[i] = static_cast<int>(j);
      used[j] = 1;
      if (extend(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  }
};

std::vector<std::vector<int>> multiplicities(const DirectedGraph& g) {
  std::vector<std::vector<int>> m(g.vertex_count(), std::vector<int>(g.vertex_count(), 0));
  for (const Arrow& a : g.arrows()) ++m[g.index_of(a.source)][g.index_of(a.target)];
  return m;
}

}  // namespace

bool wd_isomorphic(const WiringDiagram& a, const WiringDiagram& b) {
  const DirectedGraph& ga = a.graph();
  const DirectedGraph& gb = b.graph();
  if (ga.vertex_count() != gb.vertex_count() || ga.arrow_count() != gb.arrow_count()) return false;
  IsoMatcher m;
  m.n = ga.vertex_count();
  m.ma = multiplicities(ga);
  m.mb = multiplicities(gb);
  for (const VertexId& v : ga.vertices()) m.la.push_back(&a.state_vector(v));
  for (const VertexId& v : gb.vertices()) m.lb.push_back(&b.state_vector(v));

  // Cheap invariant: the multisets of (state vector, in-degree, out-degree).
  auto signature = [](const std::vector<const StateVector*>& ls,
                      const std::vector<std::vector<int>>& mm) {
    std::vector<std::tuple<StateVector, int, int>> sig;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      int indeg = 0, outdeg = 0;
      for (std::size_t j = 0; j < ls.size(); ++j) {
        indeg += mm[j][i];
        outdeg += mm[i][j];
      }
      sig.emplace_back(*ls[i], indeg, outdeg);
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  if (signature(m.la, m.ma) != signature(m.lb, m.mb)) return false;
  m.map.assign(m.n, -1);
  m.used.assign(m.n, 0);
  return m.extend(0);
}

double wd_distance_upper(const WiringDiagram& from, const WiringDiagram& to, const EditPath& p,
                         const CostFunction& c) {
  const ReplayResult r = replay_path(from, p, c);
  if (!wd_isomorphic(r.result, to)) {
    throw PathEndpointMismatchError("edit path does not end at a diagram isomorphic to the target");
  }
  return r.total_cost;
}

}  // namespace analogy
