#include "analogy/wd_category.hpp"

#include <cstdint>

#include "analogy/errors.hpp"

namespace analogy {

SkeletonWdGraph SkeletonWdGraph::from_graph(DirectedGraph g) {
  RelationSet order = transitive_closure(g);
  if (g.arrow_pairs() != covering_pairs(order)) {
    throw NotSkeletonError("graph violates WD3 (parallel or shortcut arrow)");
  }
  return SkeletonWdGraph(std::move(g), std::move(order));
}

SkeletonWdGraph SkeletonWdGraph::from_order(const RelationSet& order) {
  DirectedGraph g = transitive_reduction(order);
  return SkeletonWdGraph(std::move(g), order);
}

std::optional<WdMorphism> morphism_exists(const SkeletonWdGraph& g1, const SkeletonWdGraph& g2) {
  if (g1.vertex_set() != g2.vertex_set()) throw VertexSetMismatchError();
  if (!g2.order().is_subset_of(g1.order())) return std::nullopt;
  return WdMorphism{g1, g2, g2.order().pairs()};
}

namespace {

bool has_intermediate_order(const RelationSet& lower, const RelationSet& upper) {
  std::vector<std::pair<std::size_t, std::size_t>> extra;
  const std::size_t n = lower.base().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (upper.contains(i, j) && !lower.contains(i, j)) extra.emplace_back(i, j);
    }
  }
  if (extra.size() >= 63) {
    throw std::length_error("brute-force irreducibility check limited to 62 differing pairs");
  }
  const std::uint64_t full = (std::uint64_t{1} << extra.size()) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    RelationSet candidate = lower;
    for (std::size_t b = 0; b < extra.size(); ++b) {
      if ((mask >> b) & 1U) candidate.set(extra[b].first, extra[b].second, true);
    }
    if (candidate.is_partial_order()) return true;
  }
  return false;
}

}  // namespace

bool is_irreducible(const WdMorphism& m, IrreducibilityCheck check) {
  const RelationSet& upper = m.source.order();
  const RelationSet& lower = m.target.order();
  const std::size_t difference = upper.count_not_in(lower);
  if (difference == 0) return false;
  switch (check) {
    case IrreducibilityCheck::kSinglePairDifference:
      return difference == 1;
    case IrreducibilityCheck::kBruteForce:
      return !has_intermediate_order(lower, upper);
  }
  return false;
}

std::vector<SkeletonWdGraph> enumerate_covers(const SkeletonWdGraph& g, CoverDirection direction) {
  const RelationSet& order = g.order();
  const std::size_t n = order.base().size();
  std::vector<SkeletonWdGraph> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      RelationSet candidate = order;
      if (direction == CoverDirection::kDown) {
        if (!order.contains(i, j)) continue;
        candidate.set(i, j, false);
      } else {
        if (order.contains(i, j) || order.contains(j, i)) continue;
        candidate.set(i, j, true);
      }
      if (candidate.is_transitive()) out.push_back(SkeletonWdGraph::from_order(candidate));
    }
  }
  return out;
}

}  // namespace analogy
