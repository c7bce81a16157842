#pragma once

// Elementary edit operations on skeleton wiring diagrams with nonempty state
// vectors, their costs, and edit-path replay.

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "analogy/olog.hpp"
#include "analogy/wiring_diagram.hpp"

namespace analogy {

enum class EditKind {
  kAddVertex,        // (i)
  kDeleteVertex,     // (ii)
  kAddLabel,         // (iii)
  kDeleteLabel,      // (iv)
  kChangeLabel,      // (v)
  kAddArrow,         // (vi)
  kDeleteArrow,      // (vii)
  kGeneralizeGraph,  // (viii)
  kSpecializeGraph,  // (ix)
};

// "add-vertex", "delete-vertex", ...
const char* to_string(EditKind k) noexcept;
// "i" ... "ix"
const char* roman(EditKind k) noexcept;
// Accepts either spelling. Throws ParseError.
EditKind edit_kind_from_string(const std::string& s);
EditKind inverse_kind(EditKind k) noexcept;

struct EditOp {
  EditKind kind = EditKind::kAddLabel;

  VertexId vertex;  // (i)-(v)
  // (i): the new state vector and arrows in -> vertex, vertex -> out.
  // (ii): optional record of the deleted content; checked when present.
  StateVector labels;
  std::vector<VertexId> in;
  std::vector<VertexId> out;

  std::optional<Label> label;      // (iii), (iv), and the old label of (v)
  std::optional<Label> new_label;  // (v)

  VertexPair arrow;  // (vi), (vii)

  // (viii), (ix): arrows of the replacement graph and, optionally, the arrows
  // it replaces.
  std::vector<VertexPair> graph;
  std::optional<std::vector<VertexPair>> previous;

  static EditOp add_vertex(VertexId v, StateVector labels, std::vector<VertexId> in = {},
                           std::vector<VertexId> out = {});
  static EditOp delete_vertex(VertexId v);
  static EditOp add_label(VertexId v, Label l);
  static EditOp delete_label(VertexId v, Label l);
  static EditOp change_label(VertexId v, Label from, Label to);
  static EditOp add_arrow(VertexId s, VertexId t);
  static EditOp delete_arrow(VertexId s, VertexId t);
  static EditOp generalize(std::vector<VertexPair> replacement);
  static EditOp specialize(std::vector<VertexPair> replacement);

  // True when the op can be inverted without looking at a diagram.
  bool is_complete() const noexcept;
  std::string describe() const;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

// Returns the edited diagram. Throws InvalidOpError.
WiringDiagram apply_op(const WiringDiagram& w, const EditOp& e);

// Inverse of an op that is valid on `context`.
EditOp inverse_op(const EditOp& e, const WiringDiagram& context);
// Inverse of a complete op; throws InvalidOpError(recorded-state-mismatch)
// when the op lacks the record its inverse needs.
EditOp invert(const EditOp& e);
// Fills in the records of (ii), (viii) and (ix) from `context`.
EditOp complete_op(const EditOp& e, const WiringDiagram& context);

// Label-change costs read off an olog: c(L -> L') = d_O(i(L), i(L')).
struct OlogLabelCost {
  std::shared_ptr<const Olog> olog;
  EdgeCost edge_cost;
  std::map<Label, TypeId> label_types;
  // Fallback for labels without an explicit entry, from sensor declarations.
  std::map<std::string, TypeId> sensor_types;

  std::optional<TypeId> type_of(const Label& l) const;
  // Records every declaration's olog_type as a sensor fallback.
  void add_sensor_types(const SensorCatalog& catalog);
};

// Costs are attached to op classes that contain an op and its inverse, so
// c(E) = c(E^-1) always holds.
class CostFunction {
 public:
  double vertex = 1.0;  // (i), (ii)
  double label = 1.0;   // (iii), (iv)
  double change = 1.0;  // (v), flat rule
  double arrow = 1.0;   // (vi), (vii)
  double graph = 1.0;   // (viii), (ix)
  std::optional<OlogLabelCost> olog;

  static CostFunction unit() { return CostFunction{}; }

  // Throws NonpositiveCostError.
  void validate() const;
  // +infinity when the change is not priced (a label has no olog type, the
  // types are disconnected, or both labels map to the same type).
  double change_cost(const Label& from, const Label& to) const;
  // Throws InvalidOpError(unpriced-label) for an unpriced change.
  double cost(const EditOp& e) const;
};

// A nonempty sequence of ops.
class EditPath {
 public:
  // Throws EmptyPathError.
  explicit EditPath(std::vector<EditOp> ops);

  const std::vector<EditOp>& ops() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }

 private:
  std::vector<EditOp> ops_;
};

struct ReplayResult {
  WiringDiagram result;
  double total_cost = 0.0;
  std::vector<double> op_costs;
};

// Folds apply_op over the path. Throws InvalidOpError carrying the index of
// the failing op.
ReplayResult replay_path(const WiringDiagram& w, const EditPath& p, const CostFunction& c);

// Vertex bijection preserving arrows (with multiplicity) and state vectors.
bool wd_isomorphic(const WiringDiagram& a, const WiringDiagram& b);

// Cost of p, after checking that it ends at a diagram isomorphic to `to`.
// Throws PathEndpointMismatchError.
double wd_distance_upper(const WiringDiagram& from, const WiringDiagram& to, const EditPath& p,
                         const CostFunction& c);

}  // namespace analogy
