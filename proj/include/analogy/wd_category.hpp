#pragma once

// The category R(V) of skeleton WD graphs over a fixed vertex set V: there
// is a (unique) morphism G1 => G2 exactly when R(G2) is contained in R(G1).

#include <optional>
#include <vector>

#include "analogy/graph.hpp"

namespace analogy {

// A validated skeleton WD graph together with its cached order R(G).
class SkeletonWdGraph {
 public:
  // Throws CycleError or NotSkeletonError.
  static SkeletonWdGraph from_graph(DirectedGraph g);
  // Realizes a partial order by its Hasse diagram.
  static SkeletonWdGraph from_order(const RelationSet& order);

  const DirectedGraph& graph() const noexcept { return graph_; }
  const RelationSet& order() const noexcept { return order_; }
  // Sorted vertex ids.
  const std::vector<VertexId>& vertex_set() const noexcept { return order_.base(); }

  friend bool operator==(const SkeletonWdGraph& a, const SkeletonWdGraph& b) {
    return a.order_ == b.order_;
  }

 private:
  SkeletonWdGraph(DirectedGraph g, RelationSet order)
      : graph_(std::move(g)), order_(std::move(order)) {}

  DirectedGraph graph_;
  RelationSet order_;
};

// Hom-sets of R(V) have at most one element, so a morphism is just its
// witnessing inclusion R(target) in R(source).
struct WdMorphism {
  SkeletonWdGraph source;
  SkeletonWdGraph target;
  std::vector<VertexPair> witness;  // pairs of R(target), all inside R(source)

  bool is_identity() const noexcept { return source.order() == target.order(); }
};

// Throws VertexSetMismatchError when the vertex sets differ.
std::optional<WdMorphism> morphism_exists(const SkeletonWdGraph& g1, const SkeletonWdGraph& g2);

enum class IrreducibilityCheck {
  kSinglePairDifference,  // |R(src) \ R(dst)| == 1
  kBruteForce,            // search every relation strictly in between
};

// The identity morphism is not irreducible.
bool is_irreducible(const WdMorphism& m,
                    IrreducibilityCheck check = IrreducibilityCheck::kSinglePairDifference);

enum class CoverDirection {
  kDown,  // g => g' irreducible: one order pair removed
  kUp,    // g'' => g irreducible: one order pair added
};

std::vector<SkeletonWdGraph> enumerate_covers(const SkeletonWdGraph& g, CoverDirection direction);

}  // namespace analogy
