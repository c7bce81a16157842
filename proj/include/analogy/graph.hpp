#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "analogy/bit_matrix.hpp"

namespace analogy {

using VertexId = std::string;
using ArrowId = std::string;
using VertexPair = std::pair<VertexId, VertexId>;

struct Arrow {
  ArrowId id;
  VertexId source;
  VertexId target;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

// Finite directed multigraph (V, A, s, t). Loops, cycles and parallel arrows
// are representable; validate_wd_graph and is_skeleton narrow them down.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  // Throws DuplicateIdError on repeated vertex or arrow ids and
  // UnknownIdError when an arrow endpoint is not a vertex.
  DirectedGraph(std::vector<VertexId> vertices, std::vector<Arrow> arrows);

  // Arrow ids are generated as "src->dst" (suffixed on collision).
  static DirectedGraph from_pairs(std::vector<VertexId> vertices,
                                  const std::vector<VertexPair>& pairs);

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }

  bool has_vertex(const VertexId& v) const noexcept { return index_.contains(v); }
  // Position of v in vertices(); throws UnknownIdError.
  std::size_t index_of(const VertexId& v) const;
  const Arrow* find_arrow(const ArrowId& id) const noexcept;
  const Arrow* find_arrow(const VertexId& source, const VertexId& target) const noexcept;

  void add_vertex(VertexId v);
  // Removes v and every arrow incident to it.
  void remove_vertex(const VertexId& v);
  // Returns the id actually used (generated when id is empty).
  ArrowId add_arrow(const VertexId& source, const VertexId& target, ArrowId id = {});
  void remove_arrow(const ArrowId& id);

  // Sorted (source, target) pairs, one per arrow (duplicates kept).
  std::vector<VertexPair> arrow_pairs() const;
  std::vector<VertexId> sorted_vertices() const;

 private:
  ArrowId fresh_arrow_id(const VertexId& source, const VertexId& target) const;
  void rebuild_index();

  std::vector<VertexId> vertices_;
  std::vector<Arrow> arrows_;
  std::unordered_map<VertexId, std::size_t> index_;
};

// Bijective labelling V -> {1..n} increasing along every arrow.
struct LinearExtension {
  std::map<VertexId, std::size_t> labeling;

  std::size_t rank(const VertexId& v) const { return labeling.at(v); }
  // Vertices listed by increasing rank.
  std::vector<VertexId> order() const;
};

// Binary relation on a finite base set, stored as a bit matrix indexed by
// the lexicographically sorted base.
class RelationSet {
 public:
  RelationSet() = default;
  explicit RelationSet(std::vector<VertexId> base);
  static RelationSet from_pairs(std::vector<VertexId> base, const std::vector<VertexPair>& pairs);
  static RelationSet diagonal(std::vector<VertexId> base);

  const std::vector<VertexId>& base() const noexcept { return base_; }
  std::size_t index_of(const VertexId& v) const;
  bool contains(const VertexId& x, const VertexId& y) const;
  bool contains(std::size_t x, std::size_t y) const noexcept { return bits_.test(x, y); }
  void insert(const VertexId& x, const VertexId& y);
  void erase(const VertexId& x, const VertexId& y);
  void set(std::size_t x, std::size_t y, bool value) noexcept { bits_.set(x, y, value); }

  std::size_t size() const noexcept { return bits_.count(); }
  std::vector<VertexPair> pairs() const;
  const BitMatrix& matrix() const noexcept { return bits_; }

  bool is_reflexive() const noexcept;
  bool is_antisymmetric() const noexcept;
  bool is_transitive() const noexcept;
  bool is_partial_order() const noexcept {
    return is_reflexive() && is_antisymmetric() && is_transitive();
  }

  bool is_subset_of(const RelationSet& other) const noexcept {
    return base_ == other.base_ && bits_.is_subset_of(other.bits_);
  }
  // |*this \ other|; requires equal bases.
  std::size_t count_not_in(const RelationSet& other) const noexcept {
    return bits_.count_not_in(other.bits_);
  }

  friend bool operator==(const RelationSet&, const RelationSet&) = default;

 private:
  std::vector<VertexId> base_;
  BitMatrix bits_;
};

// Certifies WD2 by a topological order (ties broken by vertex id).
// Throws CycleError with a loop or oriented cycle witness otherwise.
LinearExtension validate_wd_graph(const DirectedGraph& g);

bool is_acyclic(const DirectedGraph& g);

// R(G): reflexive-transitive closure of the arrow relation.
RelationSet transitive_closure(const DirectedGraph& g);

// WD3: no parallel arrows and no arrow that shortcuts another path.
bool is_skeleton(const DirectedGraph& g);

// Covering pairs (x, y), x != y, of a partial order.
std::vector<VertexPair> covering_pairs(const RelationSet& r);

// Hasse diagram of a partial order; throws NotPartialOrderError.
DirectedGraph transitive_reduction(const RelationSet& r);

}  // namespace analogy
