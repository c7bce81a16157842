#include "analogy/wiring_diagram.hpp"

#include <algorithm>

#include "analogy/errors.hpp"

namespace analogy {

WiringDiagram::WiringDiagram(DirectedGraph graph, std::map<VertexId, StateVector> state_vectors,
                             std::shared_ptr<const SensorCatalog> catalog)
    : graph_(std::move(graph)),
      state_vectors_(std::move(state_vectors)),
      catalog_(catalog ? std::move(catalog) : std::make_shared<const SensorCatalog>()) {
  for (const auto& [v, labels] : state_vectors_) {
    if (!graph_.has_vertex(v)) throw UnknownIdError("vertex", v);
  }
  for (const VertexId& v : graph_.vertices()) state_vectors_[v];
}

const StateVector& WiringDiagram::state_vector(const VertexId& v) const {
  auto it = state_vectors_.find(v);
  if (it == state_vectors_.end()) throw UnknownIdError("vertex", v);
  return it->second;
}

StateVector& WiringDiagram::mutable_state_vector(const VertexId& v) {
  auto it = state_vectors_.find(v);
  if (it == state_vectors_.end()) throw UnknownIdError("vertex", v);
  return it->second;
}

void WiringDiagram::add_vertex(const VertexId& v, StateVector labels) {
  graph_.add_vertex(v);
  state_vectors_[v] = std::move(labels);
}

void WiringDiagram::remove_vertex(const VertexId& v) {
  graph_.remove_vertex(v);
  state_vectors_.erase(v);
}

void WiringDiagram::replace_arrows(const std::vector<VertexPair>& pairs) {
  graph_ = DirectedGraph::from_pairs(graph_.vertices(), pairs);
}

bool ValidationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* ValidationReport::find(const std::string& axiom) const noexcept {
  for (const AxiomCheck& c : checks) {
    if (c.axiom == axiom) return &c;
  }
  return nullptr;
}

ValidationReport validate_wd(const WiringDiagram& w, bool require_skeleton, bool require_nonempty) {
  ValidationReport report;
  const DirectedGraph& g = w.graph();

  // Endpoints are enforced by DirectedGraph itself; this entry records it.
  report.checks.push_back({"WD0", true, "finite directed graph", {}});

  AxiomCheck wd1{"WD1", true, "", {}};
  for (const auto& [v, labels] : w.state_vectors()) {
    for (const Label& l : labels) {
      try {
        w.catalog().check_label(l);
      } catch (const Error& e) {
        wd1.passed = false;
        if (wd1.detail.empty()) wd1.detail = e.what();
        wd1.witness.push_back(v + ":" + l.to_string());
      }
    }
  }
  if (wd1.passed) wd1.detail = "every label is well-typed";
  report.checks.push_back(std::move(wd1));

  AxiomCheck wd2{"WD2", true, "acyclic", {}};
  try {
    validate_wd_graph(g);
  } catch (const CycleError& e) {
    wd2.passed = false;
    wd2.detail = e.what();
    wd2.witness = e.cycle();
  }
  const bool acyclic = wd2.passed;
  report.checks.push_back(std::move(wd2));

  if (require_skeleton) {
    AxiomCheck wd3{"WD3", true, "skeleton", {}};
    if (!acyclic) {
      wd3.passed = false;
      wd3.detail = "not checked: graph is not acyclic";
    } else {
      const RelationSet order = transitive_closure(g);
      std::vector<VertexPair> cover = covering_pairs(order);
      std::vector<VertexPair> arrows = g.arrow_pairs();
      if (arrows != cover) {
        wd3.passed = false;
        // Arrows that are not covers, plus repeats of a cover.
        std::vector<VertexPair> seen;
        for (const VertexPair& p : arrows) {
          const bool is_cover = std::binary_search(cover.begin(), cover.end(), p);
          const bool repeated = std::find(seen.begin(), seen.end(), p) != seen.end();
          if (!is_cover || repeated) wd3.witness.push_back(p.first + "->" + p.second);
          seen.push_back(p);
        }
        wd3.detail = "parallel or shortcut arrow";
      }
    }
    report.checks.push_back(std::move(wd3));
  }

  if (require_nonempty) {
    AxiomCheck ne{"nonempty", true, "every state vector is nonempty", {}};
    if (g.vertex_count() == 0) {
      ne.passed = false;
      ne.detail = "diagram has no vertices";
    }
    for (const auto& [v, labels] : w.state_vectors()) {
      if (labels.empty()) {
        ne.passed = false;
        ne.detail = "empty state vector";
        ne.witness.push_back(v);
      }
    }
    report.checks.push_back(std::move(ne));
  }
  return report;
}

}  // namespace analogy
