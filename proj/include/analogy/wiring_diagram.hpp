#pragma once

// Wiring diagrams: a directed graph whose vertices carry state vectors of
// sensor labels. Construction checks only referential integrity; the WD
// axioms are reported by validate_wd.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "analogy/graph.hpp"
#include "analogy/sensing.hpp"

namespace analogy {

class WiringDiagram {
 public:
  WiringDiagram() : catalog_(std::make_shared<const SensorCatalog>()) {}
  // Vertices missing from `state_vectors` get an empty vector. Throws
  // UnknownIdError for a state vector on a vertex not in the graph.
  WiringDiagram(DirectedGraph graph, std::map<VertexId, StateVector> state_vectors,
                std::shared_ptr<const SensorCatalog> catalog);

  const DirectedGraph& graph() const noexcept { return graph_; }
  const std::map<VertexId, StateVector>& state_vectors() const noexcept { return state_vectors_; }
  const StateVector& state_vector(const VertexId& v) const;
  const SensorCatalog& catalog() const noexcept { return *catalog_; }
  const std::shared_ptr<const SensorCatalog>& catalog_ptr() const noexcept { return catalog_; }

  // Mutators used by the edit operations; they keep the vertex/state-vector
  // maps in sync but do not revalidate the axioms.
  DirectedGraph& mutable_graph() noexcept { return graph_; }
  StateVector& mutable_state_vector(const VertexId& v);
  void add_vertex(const VertexId& v, StateVector labels);
  void remove_vertex(const VertexId& v);
  void replace_arrows(const std::vector<VertexPair>& pairs);

 private:
  DirectedGraph graph_;
  std::map<VertexId, StateVector> state_vectors_;
  std::shared_ptr<const SensorCatalog> catalog_;
};

struct AxiomCheck {
  std::string axiom;  // "WD0", "WD1", "WD2", "WD3", "nonempty"
  bool passed = true;
  std::string detail;
  std::vector<std::string> witness;
};

struct ValidationReport {
  std::vector<AxiomCheck> checks;

  bool passed() const noexcept;
  const AxiomCheck* find(const std::string& axiom) const noexcept;
};

// WD0-WD2 are always checked. WD3 when require_skeleton; "nonempty" (every
// state vector nonempty and at least one vertex) when require_nonempty.
ValidationReport validate_wd(const WiringDiagram& w, bool require_skeleton, bool require_nonempty);

// Membership in the space the edit operations act on.
inline bool in_edit_space(const WiringDiagram& w) { return validate_wd(w, true, true).passed(); }

}  // namespace analogy
