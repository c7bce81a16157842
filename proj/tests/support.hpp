#pragma once

// Fixtures and independent oracles shared by the test binaries. Oracles work
// on plain matrices and brute-force enumeration; they use the library only to
// build inputs and to apply single edit operations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "analogy/edit.hpp"
#include "analogy/errors.hpp"
#include "analogy/graph.hpp"
#include "analogy/trace.hpp"
#include "analogy/wiring_diagram.hpp"

namespace testsupport {

using namespace analogy;

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(ANALOGY_DATA_DIR) / rel;
}

using BoolMatrix = std::vector<std::vector<bool>>;

inline std::vector<VertexId> names(std::size_t n) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
  return out;
}

// Adjacency matrix of g indexed by the sorted vertex ids.
inline BoolMatrix adjacency(const DirectedGraph& g) {
  const auto vs = g.sorted_vertices();
  std::map<VertexId, std::size_t> idx;
  for (std::size_t i = 0; i < vs.size(); ++i) idx[vs[i]] = i;
  BoolMatrix m(vs.size(), std::vector<bool>(vs.size(), false));
  for (const Arrow& a : g.arrows()) m[idx[a.source]][idx[a.target]] = true;
  return m;
}

// Paths of length >= 1 (Floyd-Warshall on booleans).
inline BoolMatrix strict_reachability(BoolMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k][j]) m[i][j] = true;
  return m;
}

inline BoolMatrix reflexive_reachability(const BoolMatrix& adj) {
  BoolMatrix r = strict_reachability(adj);
  for (std::size_t i = 0; i < r.size(); ++i) r[i][i] = true;
  return r;
}

inline bool oracle_acyclic(const BoolMatrix& adj) {
  const BoolMatrix r = strict_reachability(adj);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i][i]) return false;
  return true;
}

// Pairs (x, y), x != y, of a partial order with nothing strictly between.
inline BoolMatrix oracle_covers(const BoolMatrix& order) {
  const std::size_t n = order.size();
  BoolMatrix c(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !order[x][y]) continue;
      bool between = false;
      for (std::size_t z = 0; z < n && !between; ++z)
        between = z != x && z != y && order[x][z] && order[z][y];
      c[x][y] = !between;
    }
  return c;
}

inline BoolMatrix relation_matrix(const RelationSet& r) {
  const std::size_t n = r.base().size();
  BoolMatrix m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = r.contains(i, j);
  return m;
}

inline std::vector<VertexPair> matrix_pairs(const BoolMatrix& m, const std::vector<VertexId>& vs) {
  std::vector<VertexPair> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j && m[i][j]) out.emplace_back(vs[i], vs[j]);
  return out;
}

// Every partial order on n points as a matrix, found by filtering all
// relations on the off-diagonal pairs.
inline std::vector<BoolMatrix> all_partial_orders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) cells.emplace_back(i, j);
  std::vector<BoolMatrix> out;
  for (std::uint32_t mask = 0; mask < (1U << cells.size()); ++mask) {
    BoolMatrix m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (mask >> c & 1U) m[cells[c].first][cells[c].second] = true;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && m[i][j] && m[j][i]) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k)
          if (m[i][j] && m[j][k] && !m[i][k]) ok = false;
      }
    if (ok) out.push_back(std::move(m));
  }
  return out;
}

inline bool matrix_subset(const BoolMatrix& a, const BoolMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] && !b[i][j]) return false;
  return true;
}

// Random DAG: arrows only go forward along a random permutation.
inline DirectedGraph random_dag(std::mt19937& rng, std::size_t n, double density) {
  auto vs = names(n);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(density);
  std::vector<VertexPair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) pairs.emplace_back(vs[perm[i]], vs[perm[j]]);
  return DirectedGraph::from_pairs(vs, pairs);
}

// Hasse diagram of a random DAG, computed by the oracle.
inline std::vector<VertexPair> random_skeleton_pairs(std::mt19937& rng, std::size_t n,
                                                     double density) {
  const DirectedGraph g = random_dag(rng, n, density);
  return matrix_pairs(oracle_covers(reflexive_reachability(adjacency(g))), g.sorted_vertices());
}

// Base sensors p, q, r on {•} with codomain {0,1}.
inline std::shared_ptr<const SensorCatalog> toy_catalog() {
  auto c = std::make_shared<SensorCatalog>();
  for (const char* id : {"p", "q", "r"}) {
    SensingFunctionDecl d;
    d.id = id;
    d.codomain = Codomain::boolean();
    c->add(d);
  }
  return c;
}

inline Label lab(const std::string& sensor, double value) { return Label{sensor, kBullet, value}; }

inline WiringDiagram make_wd(const std::vector<std::pair<VertexId, StateVector>>& vertices,
                             const std::vector<VertexPair>& arrows,
                             std::shared_ptr<const SensorCatalog> catalog = toy_catalog()) {
  std::vector<VertexId> vs;
  std::map<VertexId, StateVector> svs;
  for (const auto& [v, l] : vertices) {
    vs.push_back(v);
    svs[v] = l;
  }
  return WiringDiagram(DirectedGraph::from_pairs(vs, arrows), svs, std::move(catalog));
}

// Skeleton diagram with nonempty random state vectors drawn from `universe`.
inline WiringDiagram random_wd(std::mt19937& rng, std::size_t n, const std::vector<Label>& universe,
                               std::shared_ptr<const SensorCatalog> catalog,
                               std::size_t max_labels = 2) {
  const auto vs = names(n);
  std::vector<std::pair<VertexId, StateVector>> vertices;
  std::uniform_int_distribution<std::size_t> count(1, std::min(max_labels, universe.size()));
  for (const auto& v : vs) {
    std::vector<Label> pool = universe;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(count(rng));
    vertices.emplace_back(v, StateVector(pool.begin(), pool.end()));
  }
  return make_wd(vertices, random_skeleton_pairs(rng, n, 0.5), std::move(catalog));
}

// Renames vertices to fresh ids in reverse order of appearance.
inline WiringDiagram renamed_copy(const WiringDiagram& w) {
  std::map<VertexId, VertexId> ren;
  const auto& vs = w.graph().vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) ren[vs[i]] = "v" + std::to_string(vs.size() - i);
  std::vector<std::pair<VertexId, StateVector>> vertices;
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) vertices.emplace_back(ren[*it], w.state_vector(*it));
  std::vector<VertexPair> arrows;
  for (const Arrow& a : w.graph().arrows()) arrows.emplace_back(ren[a.source], ren[a.target]);
  return make_wd(vertices, arrows, w.catalog_ptr());
}

// Isomorphism-invariant key: the least encoding over all vertex orderings.
inline std::string canonical_key(const WiringDiagram& w) {
  std::vector<VertexId> vs = w.graph().vertices();
  std::sort(vs.begin(), vs.end());
  std::string best;
  bool first = true;
  do {
    std::string s = std::to_string(vs.size()) + "|";
    for (const auto& v : vs) s += to_string(w.state_vector(v)) + ";";
    for (const auto& a : vs)
      for (const auto& b : vs) {
        std::size_t k = 0;
        for (const Arrow& ar : w.graph().arrows()) k += ar.source == a && ar.target == b;
        s += static_cast<char>('0' + k);
      }
    if (first || s < best) best = s;
    first = false;
  } while (std::next_permutation(vs.begin(), vs.end()));
  return best;
}

// Dijkstra over the graph of diagrams reachable by single valid operations,
// with labels from `universe` and at most `max_vertices` vertices. The
// neighbourhood of a diagram is found by trying every candidate op through
// apply_op; nodes are interned by canonical_key.
class EditGraphOracle {
 public:
  EditGraphOracle(std::vector<Label> universe, CostFunction cost, std::size_t max_vertices)
      : universe_(std::move(universe)), cost_(std::move(cost)), max_vertices_(max_vertices) {
    for (std::size_t n = 1; n <= max_vertices_; ++n) orders_.push_back(all_partial_orders(n));
  }

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  // Infinity when the distance exceeds `budget`.
  double distance(const WiringDiagram& from, const WiringDiagram& to, double budget) {
    const std::size_t start = intern(from);
    const std::string goal = canonical_key(to);
    std::unordered_map<std::size_t, double> dist{{start, 0.0}};
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.emplace(0.0, start);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      if (d > budget + 1e-9) break;
      if (keys_[u] == goal) return d;
      expand(u);
      for (const auto& [v, c] : edges_[u]) {
        const double nd = d + c;
        auto it = dist.find(v);
        if (it == dist.end() || nd < it->second - 1e-12) {
          dist[v] = nd;
          pq.emplace(nd, v);
        }
      }
    }
    return kInf;
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  std::size_t intern(const WiringDiagram& w) {
    std::string key = canonical_key(w);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const std::size_t id = nodes_.size();
    index_.emplace(key, id);
    nodes_.push_back(w);
    keys_.push_back(std::move(key));
    edges_.emplace_back();
    expanded_.push_back(false);
    return id;
  }

  void try_op(std::size_t u, const EditOp& op) {
    WiringDiagram next;
    double c = 0.0;
    try {
      c = cost_.cost(op);
      next = apply_op(nodes_[u], op);
    } catch (const InvalidOpError&) {
      return;
    }
    const std::size_t v = intern(next);
    edges_[u].emplace_back(v, c);
  }

  void expand(std::size_t u) {
    if (expanded_[u]) return;
    expanded_[u] = true;
    const WiringDiagram w = nodes_[u];
    const std::vector<VertexId> vs = w.graph().sorted_vertices();
    const std::size_t n = vs.size();

    for (const auto& v : vs) try_op(u, EditOp::delete_vertex(v));

    if (n < max_vertices_) {
      VertexId fresh = "x0";
      for (int k = 0; w.graph().has_vertex(fresh); ++k) fresh = "x" + std::to_string(k + 1);
      for (std::uint32_t lm = 1; lm < (1U << universe_.size()); ++lm) {
        StateVector sv;
        for (std::size_t i = 0; i < universe_.size(); ++i)
          if (lm >> i & 1U) sv.insert(universe_[i]);
        for (std::uint32_t in = 0; in < (1U << n); ++in)
          for (std::uint32_t out = 0; out < (1U << n); ++out) {
            if (in & out) continue;
            std::vector<VertexId> ins, outs;
            for (std::size_t i = 0; i < n; ++i) {
              if (in >> i & 1U) ins.push_back(vs[i]);
              if (out >> i & 1U) outs.push_back(vs[i]);
            }
            try_op(u, EditOp::add_vertex(fresh, sv, ins, outs));
          }
      }
    }

    for (const auto& v : vs) {
      const StateVector& sv = w.state_vector(v);
      for (const Label& l : universe_) {
        if (!sv.contains(l)) try_op(u, EditOp::add_label(v, l));
      }
      for (const Label& l : sv) {
        try_op(u, EditOp::delete_label(v, l));
        for (const Label& m : universe_)
          if (!sv.contains(m)) try_op(u, EditOp::change_label(v, l, m));
      }
    }

    for (const auto& a : vs)
      for (const auto& b : vs) {
        if (a == b) continue;
        try_op(u, EditOp::add_arrow(a, b));
        if (w.graph().find_arrow(a, b)) try_op(u, EditOp::delete_arrow(a, b));
      }

    for (const BoolMatrix& order : orders_[n - 1]) {
      const auto pairs = matrix_pairs(oracle_covers(order), vs);
      try_op(u, EditOp::generalize(pairs));
      try_op(u, EditOp::specialize(pairs));
    }
  }

  std::vector<Label> universe_;
  CostFunction cost_;
  std::size_t max_vertices_;
  std::vector<std::vector<BoolMatrix>> orders_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<WiringDiagram> nodes_;
  std::vector<std::string> keys_;
  std::vector<std::vector<std::pair<std::size_t, double>>> edges_;
  std::vector<bool> expanded_;
};

// Step-function reading of raw samples.
inline std::optional<double> oracle_value(const std::vector<Sample>& samples,
                                          const std::string& sensor, const std::string& arg,
                                          double t) {
  std::optional<double> best_t, best_v;
  for (const Sample& s : samples) {
    if (s.sensor != sensor || s.arg != arg || s.t > t || !s.value.is_number()) continue;
    if (!best_t || s.t >= *best_t) {
      best_t = s.t;
      best_v = s.value.number();
    }
  }
  return best_v;
}

inline bool oracle_label_holds(const std::vector<Sample>& samples, const SensorCatalog& catalog,
                               const Label& l, double t) {
  const SensingFunctionDecl& d = catalog.get(l.sensor);
  if (!l.value.is_number()) return false;
  if (d.kind == SensorKind::kDerivative) {
    const auto now = oracle_value(samples, d.base, l.arg, t);
    const auto before = oracle_value(samples, d.base, l.arg, t - d.window);
    return now && before && *now - *before == l.value.number();
  }
  const auto v = oracle_value(samples, l.sensor, l.arg, t);
  return v && *v == l.value.number();
}

// Every vertex -> time map over sample times (shifted by each derivative
// window used in w) satisfying the labels and strict arrow order.
inline std::set<std::map<VertexId, double>> oracle_matches(const std::vector<Sample>& samples,
                                                           const WiringDiagram& w) {
  std::set<double> shifts{0.0};
  for (const auto& [v, sv] : w.state_vectors())
    for (const Label& l : sv) {
      const auto& d = w.catalog().get(l.sensor);
      if (d.kind == SensorKind::kDerivative) shifts.insert(d.window);
    }
  std::set<double> tset;
  for (const Sample& s : samples)
    for (double sh : shifts) tset.insert(s.t + sh);
  const std::vector<double> times(tset.begin(), tset.end());
  const std::vector<VertexId> vs = w.graph().vertices();
  std::set<std::map<VertexId, double>> out;
  if (times.empty()) return out;
  std::vector<std::size_t> digit(vs.size(), 0);
  while (true) {
    std::map<VertexId, double> a;
    for (std::size_t i = 0; i < vs.size(); ++i) a[vs[i]] = times[digit[i]];
    bool ok = true;
    for (const Arrow& ar : w.graph().arrows()) ok = ok && a[ar.source] < a[ar.target];
    for (std::size_t i = 0; i < vs.size() && ok; ++i)
      for (const Label& l : w.state_vector(vs[i]))
        ok = ok && oracle_label_holds(samples, w.catalog(), l, a[vs[i]]);
    if (ok) out.insert(a);
    std::size_t k = 0;
    while (k < vs.size() && ++digit[k] == times.size()) digit[k++] = 0;
    if (k == vs.size()) break;
  }
  return out;
}

}  // namespace testsupport
