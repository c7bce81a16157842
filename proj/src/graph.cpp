#include "analogy/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <unordered_set>

#include "analogy/errors.hpp"

namespace analogy {

DirectedGraph::DirectedGraph(std::vector<VertexId> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  rebuild_index();
  std::unordered_set<ArrowId> seen;
  for (const auto& a : arrows_) {
    if (!seen.insert(a.id).second) throw DuplicateIdError(a.id);
    if (!has_vertex(a.source)) throw UnknownIdError("vertex", a.source);
    if (!has_vertex(a.target)) throw UnknownIdError("vertex", a.target);
  }
}

DirectedGraph DirectedGraph::from_pairs(std::vector<VertexId> vertices,
                                        const std::vector<VertexPair>& pairs) {
  DirectedGraph g(std::move(vertices), {});
  for (const auto& [s, t] : pairs) g.add_arrow(s, t);
  return g;
}

void DirectedGraph::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) throw DuplicateIdError(vertices_[i]);
  }
}

std::size_t DirectedGraph::index_of(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw UnknownIdError("vertex", v);
  return it->second;
}

const Arrow* DirectedGraph::find_arrow(const ArrowId& id) const noexcept {
  auto it = std::find_if(arrows_.begin(), arrows_.end(), [&](const Arrow& a) { return a.id == id; });
  return it == arrows_.end() ? nullptr : &*it;
}

const Arrow* DirectedGraph::find_arrow(const VertexId& source, const VertexId& target) const noexcept {
  auto it = std::find_if(arrows_.begin(), arrows_.end(), [&](const Arrow& a) {
    return a.source == source && a.target == target;
  });
  return it == arrows_.end() ? nullptr : &*it;
}

void DirectedGraph::add_vertex(VertexId v) {
  if (has_vertex(v)) throw DuplicateIdError(v);
  index_.emplace(v, vertices_.size());
  vertices_.push_back(std::move(v));
}

void DirectedGraph::remove_vertex(const VertexId& v) {
  if (!has_vertex(v)) throw UnknownIdError("vertex", v);
  std::erase_if(arrows_, [&](const Arrow& a) { return a.source == v || a.target == v; });
  std::erase(vertices_, v);
  rebuild_index();
}

ArrowId DirectedGraph::fresh_arrow_id(const VertexId& source, const VertexId& target) const {
  const ArrowId stem = source + "->" + target;
  if (!find_arrow(stem)) return stem;
  for (std::size_t k = 2;; ++k) {
    ArrowId candidate = stem + "#" + std::to_string(k);
    if (!find_arrow(candidate)) return candidate;
  }
}

ArrowId DirectedGraph::add_arrow(const VertexId& source, const VertexId& target, ArrowId id) {
  if (!has_vertex(source)) throw UnknownIdError("vertex", source);
  if (!has_vertex(target)) throw UnknownIdError("vertex", target);
  if (id.empty()) id = fresh_arrow_id(source, target);
  if (find_arrow(id)) throw DuplicateIdError(id);
  arrows_.push_back({id, source, target});
  return id;
}

void DirectedGraph::remove_arrow(const ArrowId& id) {
  if (std::erase_if(arrows_, [&](const Arrow& a) { return a.id == id; }) == 0) {
    throw UnknownIdError("arrow", id);
  }
}

std::vector<VertexPair> DirectedGraph::arrow_pairs() const {
  std::vector<VertexPair> out;
  out.reserve(arrows_.size());
  for (const auto& a : arrows_) out.emplace_back(a.source, a.target);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> DirectedGraph::sorted_vertices() const {
  auto out = vertices_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> LinearExtension::order() const {
  std::vector<VertexId> out(labeling.size());
  for (const auto& [v, rank] : labeling) out[rank - 1] = v;
  return out;
}

// ---------------------------------------------------------------------------

RelationSet::RelationSet(std::vector<VertexId> base) : base_(std::move(base)) {
  std::sort(base_.begin(), base_.end());
  if (std::adjacent_find(base_.begin(), base_.end()) != base_.end()) {
    throw DuplicateIdError(*std::adjacent_find(base_.begin(), base_.end()));
  }
  bits_ = BitMatrix(base_.size());
}

RelationSet RelationSet::from_pairs(std::vector<VertexId> base, const std::vector<VertexPair>& pairs) {
  RelationSet r(std::move(base));
  for (const auto& [x, y] : pairs) r.insert(x, y);
  return r;
}

RelationSet RelationSet::diagonal(std::vector<VertexId> base) {
  RelationSet r(std::move(base));
  for (std::size_t i = 0; i < r.base_.size(); ++i) r.bits_.set(i, i);
  return r;
}

std::size_t RelationSet::index_of(const VertexId& v) const {
  auto it = std::lower_bound(base_.begin(), base_.end(), v);
  if (it == base_.end() || *it != v) throw UnknownIdError("vertex", v);
  return static_cast<std::size_t>(it - base_.begin());
}

bool RelationSet::contains(const VertexId& x, const VertexId& y) const {
  return bits_.test(index_of(x), index_of(y));
}

void RelationSet::insert(const VertexId& x, const VertexId& y) { bits_.set(index_of(x), index_of(y)); }

void RelationSet::erase(const VertexId& x, const VertexId& y) {
  bits_.set(index_of(x), index_of(y), false);
}

std::vector<VertexPair> RelationSet::pairs() const {
  std::vector<VertexPair> out;
  for (std::size_t i = 0; i < base_.size(); ++i) {
    for (std::size_t j = 0; j < base_.size(); ++j) {
      if (bits_.test(i, j)) out.emplace_back(base_[i], base_[j]);
    }
  }
  return out;
}

bool RelationSet::is_reflexive() const noexcept {
  for (std::size_t i = 0; i < base_.size(); ++i) {
    if (!bits_.test(i, i)) return false;
  }
  return true;
}

bool RelationSet::is_antisymmetric() const noexcept {
  for (std::size_t i = 0; i < base_.size(); ++i) {
    for (std::size_t j = i + 1; j < base_.size(); ++j) {
      if (bits_.test(i, j) && bits_.test(j, i)) return false;
    }
  }
  return true;
}

bool RelationSet::is_transitive() const noexcept {
  // Transitive iff row(k) is contained in row(i) whenever (i, k) is in R.
  for (std::size_t i = 0; i < base_.size(); ++i) {
    for (std::size_t k = 0; k < base_.size(); ++k) {
      if (bits_.test(i, k) && !kernels::is_subset(bits_.row(k), bits_.row(i))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<VertexId> find_cycle(const DirectedGraph& g, const std::vector<bool>& remaining) {
  const auto& vs = g.vertices();
  for (const auto& a : g.arrows()) {
    if (a.source == a.target) return {a.source, a.source};
  }
  // Every vertex Kahn could not remove has a predecessor that also remains,
  // so walking predecessors must revisit a vertex.
  std::vector<std::vector<std::size_t>> preds(vs.size());
  for (const auto& a : g.arrows()) preds[g.index_of(a.target)].push_back(g.index_of(a.source));
  for (auto& p : preds) {
    std::sort(p.begin(), p.end(), [&](std::size_t x, std::size_t y) { return vs[x] < vs[y]; });
  }
  std::size_t start = vs.size();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (remaining[i] && (start == vs.size() || vs[i] < vs[start])) start = i;
  }
  std::vector<std::size_t> walk;
  std::vector<std::size_t> position(vs.size(), vs.size());
  std::size_t cur = start;
  while (position[cur] == vs.size()) {
    position[cur] = walk.size();
    walk.push_back(cur);
    std::size_t next = vs.size();
    for (std::size_t p : preds[cur]) {
      if (remaining[p]) {
        next = p;
        break;
      }
    }
    cur = next;
  }
  std::vector<std::size_t> cycle(walk.begin() + static_cast<std::ptrdiff_t>(position[cur]), walk.end());
  std::reverse(cycle.begin(), cycle.end());
  auto smallest = std::min_element(cycle.begin(), cycle.end(),
                                   [&](std::size_t x, std::size_t y) { return vs[x] < vs[y]; });
  std::rotate(cycle.begin(), smallest, cycle.end());
  std::vector<VertexId> out;
  for (std::size_t i : cycle) out.push_back(vs[i]);
  out.push_back(out.front());
  return out;
}

// Kahn's algorithm with a lexicographic min-heap; returns the order found
// (shorter than |V| iff the graph has a cycle).
std::vector<std::size_t> kahn_order(const DirectedGraph& g, std::vector<bool>& remaining) {
  const auto& vs = g.vertices();
  std::vector<std::size_t> indegree(vs.size(), 0);
  std::vector<std::vector<std::size_t>> succ(vs.size());
  for (const auto& a : g.arrows()) {
    const std::size_t s = g.index_of(a.source);
    const std::size_t t = g.index_of(a.target);
    succ[s].push_back(t);
    ++indegree[t];
  }
  auto cmp = [&](std::size_t x, std::size_t y) { return vs[x] > vs[y]; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  remaining.assign(vs.size(), true);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    remaining[v] = false;
    order.push_back(v);
    for (std::size_t t : succ[v]) {
      if (--indegree[t] == 0) ready.push(t);
    }
  }
  return order;
}

}  // namespace

LinearExtension validate_wd_graph(const DirectedGraph& g) {
  std::vector<bool> remaining;
  const auto order = kahn_order(g, remaining);
  if (order.size() != g.vertex_count()) throw CycleError(find_cycle(g, remaining));
  LinearExtension ext;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    ext.labeling.emplace(g.vertices()[order[rank]], rank + 1);
  }
  return ext;
}

bool is_acyclic(const DirectedGraph& g) {
  std::vector<bool> remaining;
  return kahn_order(g, remaining).size() == g.vertex_count();
}

RelationSet transitive_closure(const DirectedGraph& g) {
  validate_wd_graph(g);
  RelationSet r(g.vertices());
  for (const auto& a : g.arrows()) r.insert(a.source, a.target);
  BitMatrix m = r.matrix();
  m.close_reflexive_transitive();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) r.set(i, j, m.test(i, j));
  }
  return r;
}

std::vector<VertexPair> covering_pairs(const RelationSet& r) {
  const auto& base = r.base();
  const std::size_t n = base.size();
  std::vector<VertexPair> out;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !r.contains(x, y)) continue;
      bool covered = true;
      for (std::size_t z = 0; z < n && covered; ++z) {
        if (z != x && z != y && r.contains(x, z) && r.contains(z, y)) covered = false;
      }
      if (covered) out.emplace_back(base[x], base[y]);
    }
  }
  return out;
}

bool is_skeleton(const DirectedGraph& g) {
  const RelationSet closure = transitive_closure(g);
  return g.arrow_pairs() == covering_pairs(closure);
}

DirectedGraph transitive_reduction(const RelationSet& r) {
  if (!r.is_reflexive()) throw NotPartialOrderError("relation is not reflexive");
  if (!r.is_antisymmetric()) throw NotPartialOrderError("relation is not antisymmetric");
  if (!r.is_transitive()) throw NotPartialOrderError("relation is not transitive");
  return DirectedGraph::from_pairs(r.base(), covering_pairs(r));
}

}  // namespace analogy
