#include "analogy/edit_search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>

#include "analogy/errors.hpp"

namespace analogy {

LabelUniverse::LabelUniverse(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

bool LabelUniverse::contains(const Label& l) const {
  return std::binary_search(labels_.begin(), labels_.end(), l);
}

std::optional<std::size_t> LabelUniverse::index_of(const Label& l) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
  if (it == labels_.end() || *it != l) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

void LabelUniverse::insert(const Label& l) {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
  if (it == labels_.end() || *it != l) labels_.insert(it, l);
}

LabelUniverse endpoint_universe(const WiringDiagram& a, const WiringDiagram& b) {
  std::vector<Label> all;
  for (const WiringDiagram* w : {&a, &b}) {
    for (const auto& [v, labels] : w->state_vectors()) all.insert(all.end(), labels.begin(), labels.end());
  }
  return LabelUniverse(std::move(all));
}

namespace {

std::vector<Label> finite_labels(const SensorCatalog& catalog) {
  std::vector<Label> out;
  for (const auto& [id, decl] : catalog.sensors()) {
    if (decl.codomain.interval) continue;
    for (const std::string& arg : decl.domain.args) {
      for (const Value& v : decl.codomain.values) out.push_back({id, arg, v});
    }
  }
  return out;
}

}  // namespace

LabelUniverse default_universe(const WiringDiagram& a, const WiringDiagram& b,
                               const CostFunction& c, double radius) {
  LabelUniverse u = endpoint_universe(a, b);
  if (!c.olog || !(radius > 0.0)) return u;
  OlogLabelCost rule = *c.olog;
  rule.add_sensor_types(a.catalog());
  rule.add_sensor_types(b.catalog());

  std::vector<Label> candidates;
  for (const auto& [label, type] : rule.label_types) candidates.push_back(label);
  for (const WiringDiagram* w : {&a, &b}) {
    for (const Label& l : finite_labels(w->catalog())) {
      if (rule.type_of(l)) candidates.push_back(l);
    }
  }
  const std::vector<Label> seeds = u.labels();
  for (const Label& cand : candidates) {
    const auto t = rule.type_of(cand);
    if (!t || !rule.olog->has_type(*t)) continue;
    for (const Label& s : seeds) {
      const auto ts = rule.type_of(s);
      if (!ts || !rule.olog->has_type(*ts)) continue;
      if (olog_distance(*rule.olog, rule.edge_cost, *ts, *t).value() <= radius) {
        u.insert(cand);
        break;
      }
    }
  }
  return u;
}

namespace {

constexpr int kMax = static_cast<int>(kMaxSearchVertices);
constexpr double kEps = 1e-9;
using Row = std::uint16_t;
using Mask = std::uint64_t;

inline Row bit(int i) { return static_cast<Row>(1U << i); }

// A diagram with vertices 0..n-1. up[i] is the reflexive up-set of i in
// R(G); since every diagram here is skeleton, the order determines the
// arrows. vid tracks vertex identity for witness reconstruction.
struct CState {
  int n = 0;
  std::array<Mask, kMax> lab{};
  std::array<Row, kMax> up{};
  std::array<int, kMax> vid{};
};

bool close(int n, const Row* adj, Row* up) {
  for (int i = 0; i < n; ++i) {
    if (adj[i] & bit(i)) return false;
    up[i] = static_cast<Row>(adj[i] | bit(i));
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (up[i] & bit(k)) up[i] |= up[k];
    }
  }
  for (int i = 0; i < n; ++i) {
    Row s = static_cast<Row>(up[i] & ~bit(i));
    while (s) {
      const int j = std::countr_zero(s);
      s &= static_cast<Row>(s - 1);
      if (up[j] & bit(i)) return false;
    }
  }
  return true;
}

void covers(int n, const Row* up, Row* cov) {
  for (int i = 0; i < n; ++i) {
    const Row s = static_cast<Row>(up[i] & ~bit(i));
    Row reach = 0;
    Row t = s;
    while (t) {
      const int j = std::countr_zero(t);
      t &= static_cast<Row>(t - 1);
      reach |= static_cast<Row>(up[j] & ~bit(j));
    }
    cov[i] = static_cast<Row>(s & ~reach);
  }
}

// Closure of adj if it is a skeleton DAG.
bool skeleton_order(int n, const Row* adj, Row* up) {
  if (!close(n, adj, up)) return false;
  std::array<Row, kMax> cov{};
  covers(n, up, cov.data());
  for (int i = 0; i < n; ++i) {
    if (cov[i] != adj[i]) return false;
  }
  return true;
}

Row drop_bit(Row r, int i) {
  const Row low = static_cast<Row>(r & (bit(i) - 1));
  const Row high = static_cast<Row>((r >> (i + 1)) << i);
  return static_cast<Row>(low | high);
}

// Canonical encoding: colour refinement on (labels, up/down shape), then
// the lexicographically least encoding over orderings that respect colours.
class Canonicalizer {
 public:
  std::string key(const CState& s) {
    const int n = s.n;
    std::array<Row, kMax> down{};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (s.up[i] & bit(j)) down[j] |= bit(i);
      }
    }
    std::array<int, kMax> color{};
    {
      std::vector<std::tuple<Mask, int, int, int>> init;
      for (int i = 0; i < n; ++i) {
        init.emplace_back(s.lab[i], std::popcount(s.up[i]), std::popcount(down[i]), i);
      }
      std::sort(init.begin(), init.end());
      int c = -1;
      for (int k = 0; k < n; ++k) {
        if (k == 0 || std::get<0>(init[k]) != std::get<0>(init[k - 1]) ||
            std::get<1>(init[k]) != std::get<1>(init[k - 1]) ||
            std::get<2>(init[k]) != std::get<2>(init[k - 1])) {
          ++c;
        }
        color[std::get<3>(init[k])] = c;
      }
    }
    int classes = n ? *std::max_element(color.begin(), color.begin() + n) + 1 : 0;
    while (classes < n) {
      std::vector<std::pair<std::vector<int>, int>> sig(n);
      for (int i = 0; i < n; ++i) {
        std::vector<int>& v = sig[i].first;
        v.push_back(color[i]);
        std::vector<int> ups, downs;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          if (s.up[i] & bit(j)) ups.push_back(color[j]);
          if (down[i] & bit(j)) downs.push_back(color[j]);
        }
        std::sort(ups.begin(), ups.end());
        std::sort(downs.begin(), downs.end());
        v.insert(v.end(), ups.begin(), ups.end());
        v.push_back(-1);
        v.insert(v.end(), downs.begin(), downs.end());
        sig[i].second = i;
      }
      std::sort(sig.begin(), sig.end());
      int c = -1;
      for (int k = 0; k < n; ++k) {
        if (k == 0 || sig[k].first != sig[k - 1].first) ++c;
        color[sig[k].second] = c;
      }
      if (c + 1 == classes) break;
      classes = c + 1;
    }

    order_.resize(n);
    for (int i = 0; i < n; ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      return color[a] != color[b] ? color[a] < color[b] : a < b;
    });
    groups_.clear();
    for (int k = 0; k < n;) {
      int e = k;
      while (e < n && color[order_[e]] == color[order_[k]]) ++e;
      if (e - k > 1) groups_.emplace_back(k, e);
      k = e;
    }
    best_.clear();
    state_ = &s;
    permute(0);
    return best_;
  }

 private:
  void permute(std::size_t g) {
    if (g == groups_.size()) {
      encode();
      if (best_.empty() || buf_ < best_) best_ = buf_;
      return;
    }
    auto [b, e] = groups_[g];
    std::sort(order_.begin() + b, order_.begin() + e);
    do {
      permute(g + 1);
    } while (std::next_permutation(order_.begin() + b, order_.begin() + e));
  }

  void encode() {
    const CState& s = *state_;
    const int n = s.n;
    buf_.assign(1, static_cast<char>(n));
    std::array<int, kMax> pos{};
    for (int p = 0; p < n; ++p) pos[order_[p]] = p;
    for (int p = 0; p < n; ++p) {
      const int v = order_[p];
      const Mask m = s.lab[v];
      for (int b = 0; b < 8; ++b) buf_.push_back(static_cast<char>((m >> (8 * b)) & 0xFF));
      Row row = 0;
      for (int q = 0; q < n; ++q) {
        if (s.up[v] & bit(order_[q])) row |= bit(q);
      }
      buf_.push_back(static_cast<char>(row & 0xFF));
      buf_.push_back(static_cast<char>(row >> 8));
    }
    (void)pos;
  }

  std::vector<int> order_;
  std::vector<std::pair<int, int>> groups_;
  std::string best_;
  std::string buf_;
  const CState* state_ = nullptr;
};

// Hungarian method on an n x n row-major matrix.
double min_assignment(int n, const double* a) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::array<double, 2 * kMax + 1> u{}, v{}, way_min{};
  std::array<int, 2 * kMax + 1> p{}, way{};
  std::array<bool, 2 * kMax + 1> used{};
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    way_min.fill(kInf);
    used.fill(false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < way_min[j]) {
          way_min[j] = cur;
          way[j] = j0;
        }
        if (way_min[j] < delta) {
          delta = way_min[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          way_min[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += a[(p[j] - 1) * n + (j - 1)];
  return total;
}

struct Op {
  EditKind kind = EditKind::kAddLabel;
  int a = -1;
  int b = -1;
  int l1 = -1;
  int l2 = -1;
  Mask labels = 0;
  Row in = 0;
  Row out = 0;
};

struct Node {
  CState s;
  int parent = -1;
  Op op;
  double g = 0.0;
  std::string key;
};

struct QueueEntry {
  double f;
  double g;
  std::uint64_t seq;
  int node;
  bool operator>(const QueueEntry& o) const {
    if (f != o.f) return f > o.f;
    if (g != o.g) return g < o.g;
    return seq > o.seq;
  }
};

class Search {
 public:
  Search(const WiringDiagram& w, const WiringDiagram& target, const CostFunction& c,
         const LabelUniverse& u)
      : w_(w), u_(u), c_(c), k_(static_cast<int>(u.size())) {
    start_ = to_state(w);
    goal_ = to_state(target);
    change_.assign(static_cast<std::size_t>(k_) * k_, std::numeric_limits<double>::infinity());
    double min_change = std::numeric_limits<double>::infinity();
    for (int a = 0; a < k_; ++a) {
      for (int b = 0; b < k_; ++b) {
        if (a == b) continue;
        const double cc = c.change_cost(u.labels()[a], u.labels()[b]);
        change_[a * k_ + b] = cc;
        min_change = std::min(min_change, cc);
      }
    }
    pair_ = std::min(min_change, 2.0 * c.label);
    next_vid_ = w.graph().vertex_count();
  }

  ExactDistance run(double budget) {
    ExactDistance result;
    result.initial_upper_bound = constructive_bound();
    cap_ = std::min(budget, result.initial_upper_bound);
    best_goal_ = result.initial_upper_bound;
    goal_key_ = canon_.key(goal_);

    Node root;
    root.s = start_;
    root.key = canon_.key(start_);
    if (root.key == goal_key_) return result;
    nodes_.push_back(root);
    best_g_[root.key] = 0.0;
    pq_.push({h(start_), 0.0, seq_++, 0});

    while (!pq_.empty()) {
      const QueueEntry top = pq_.top();
      pq_.pop();
      if (top.f > cap_ + kEps) break;
      const Node node = nodes_[top.node];
      auto it = best_g_.find(node.key);
      if (it != best_g_.end() && it->second < node.g - kEps) continue;
      if (node.key == goal_key_) {
        result.distance = node.g;
        build_path(top.node, result);
        result.stats = stats_;
        return result;
      }
      ++stats_.expanded;
      expand(top.node);
    }
    result.stats = stats_;
    throw BudgetExceededError(budget, best_goal_);
  }

 private:
  CState to_state(const WiringDiagram& d) {
    const DirectedGraph& g = d.graph();
    if (g.vertex_count() > kMaxSearchVertices) {
      throw InvalidArgumentError("diagram too large for exact search");
    }
    CState s;
    s.n = static_cast<int>(g.vertex_count());
    std::array<Row, kMax> adj{};
    for (int i = 0; i < s.n; ++i) {
      const VertexId& v = g.vertices()[i];
      s.vid[i] = i;
      for (const Label& l : d.state_vector(v)) {
        const auto idx = u_.index_of(l);
        if (!idx) throw InvalidArgumentError("label " + l.to_string() + " not in the universe");
        s.lab[i] |= Mask{1} << *idx;
      }
    }
    for (const Arrow& a : g.arrows()) {
      adj[g.index_of(a.source)] |= bit(static_cast<int>(g.index_of(a.target)));
    }
    if (!skeleton_order(s.n, adj.data(), s.up.data())) {
      throw InvalidArgumentError("endpoint is not a skeleton diagram");
    }
    return s;
  }

  // Lower bound on turning label set x into y: each paired mismatch costs
  // at least pair_, each unpaired one label_ op.
  double set_bound(Mask x, Mask y) const {
    const int p = std::popcount(x & ~y);
    const int q = std::popcount(y & ~x);
    return std::min(p, q) * pair_ + std::abs(p - q) * c_.label;
  }

  // Optimal assignment of current to target vertices, ignoring arrows; an
  // unmatched vertex costs one vertex op. No op lowers it by more than its
  // cost, so the bound is consistent.
  double h(const CState& s) const {
    const int m = s.n + goal_.n;
    std::array<double, 4 * kMax * kMax> cost{};
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        double c = 0.0;
        if (i < s.n && j < goal_.n) {
          c = set_bound(s.lab[i], goal_.lab[j]);
        } else if (i < s.n || j < goal_.n) {
          c = c_.vertex;
        }
        cost[i * m + j] = c;
      }
    }
    return min_assignment(m, cost.data());
  }

  int arrow_count(const CState& s) const {
    std::array<Row, kMax> cov{};
    covers(s.n, s.up.data(), cov.data());
    int total = 0;
    for (int i = 0; i < s.n; ++i) total += std::popcount(cov[i]);
    return total;
  }

  // Strip everything down to one vertex with one label, swap that label,
  // then build the target: vertices with full state vectors, then arrows.
  double constructive_bound() const {
    double best = std::numeric_limits<double>::infinity();
    for (int v = 0; v < start_.n; ++v) {
      for (int t = 0; t < goal_.n; ++t) {
        double swap = std::numeric_limits<double>::infinity();
        for (int a = 0; a < k_; ++a) {
          if (!(start_.lab[v] >> a & 1U)) continue;
          for (int b = 0; b < k_; ++b) {
            if (!(goal_.lab[t] >> b & 1U)) continue;
            const double cost =
                a == b ? 0.0 : std::min(change_[a * k_ + b], 2.0 * c_.label);
            swap = std::min(swap, cost);
          }
        }
        const double inner = c_.label * (std::popcount(start_.lab[v]) - 1) + swap +
                             c_.label * (std::popcount(goal_.lab[t]) - 1);
        best = std::min(best, inner);
      }
    }
    return c_.arrow * arrow_count(start_) + c_.vertex * (start_.n - 1) + best +
           c_.vertex * (goal_.n - 1) + c_.arrow * arrow_count(goal_);
  }

  void emit(int parent, const CState& child, const Op& op, double cost) {
    ++stats_.generated;
    const double g = nodes_[parent].g + cost;
    const double f = g + h(child);
    if (f > cap_ + kEps) return;
    std::string key = canon_.key(child);
    auto it = best_g_.find(key);
    if (it != best_g_.end() && it->second <= g + kEps) return;
    if (key == goal_key_) {
      cap_ = std::min(cap_, g);
      best_goal_ = std::min(best_goal_, g);
    }
    best_g_[key] = g;
    Node node;
    node.s = child;
    node.parent = parent;
    node.op = op;
    node.g = g;
    node.key = std::move(key);
    nodes_.push_back(std::move(node));
    pq_.push({f, g, seq_++, static_cast<int>(nodes_.size() - 1)});
  }

  void expand(int index) {
    const CState s = nodes_[index].s;
    const double g = nodes_[index].g;
    const int n = s.n;
    std::array<Row, kMax> cov{};
    covers(n, s.up.data(), cov.data());

    // (ii)
    if (n > 1) {
      for (int v = 0; v < n; ++v) {
        CState c;
        c.n = n - 1;
        std::array<Row, kMax> adj{};
        for (int i = 0, j = 0; i < n; ++i) {
          if (i == v) continue;
          c.lab[j] = s.lab[i];
          c.vid[j] = s.vid[i];
          adj[j] = drop_bit(static_cast<Row>(cov[i] & ~bit(v)), v);
          ++j;
        }
        close(c.n, adj.data(), c.up.data());
        Op op;
        op.kind = EditKind::kDeleteVertex;
        op.a = v;
        emit(index, c, op, c_.vertex);
      }
    }

    // (i)
    if (n < kMax) {
      std::vector<std::pair<Row, Row>> configs;
      bool configs_ready = false;
      const Mask full = k_ == 64 ? ~Mask{0} : (Mask{1} << k_) - 1;
      for (Mask labels = 1; labels <= full && labels != 0; ++labels) {
        CState probe = s;
        probe.n = n + 1;
        probe.lab[n] = labels;
        if (g + c_.vertex + h(probe) > cap_ + kEps) continue;
        if (!configs_ready) {
          configs_ready = true;
          const Row all = static_cast<Row>(bit(n) - 1);
          for (Row in = 0;; in = static_cast<Row>((in - all) & all)) {
            const Row rest = static_cast<Row>(all & ~in);
            for (Row out = 0;; out = static_cast<Row>((out - rest) & rest)) {
              std::array<Row, kMax> adj{};
              for (int i = 0; i < n; ++i) adj[i] = cov[i];
              for (int i = 0; i < n; ++i) {
                if (in & bit(i)) adj[i] |= bit(n);
              }
              adj[n] = out;
              std::array<Row, kMax> up{};
              if (skeleton_order(n + 1, adj.data(), up.data())) configs.emplace_back(in, out);
              if (out == rest) break;
            }
            if (in == all) break;
          }
        }
        for (auto [in, out] : configs) {
          std::array<Row, kMax> adj{};
          for (int i = 0; i < n; ++i) adj[i] = cov[i];
          for (int i = 0; i < n; ++i) {
            if (in & bit(i)) adj[i] |= bit(n);
          }
          adj[n] = out;
          CState c = s;
          c.n = n + 1;
          c.lab[n] = labels;
          c.vid[n] = next_vid_;
          close(c.n, adj.data(), c.up.data());
          Op op;
          op.kind = EditKind::kAddVertex;
          op.labels = labels;
          op.in = in;
          op.out = out;
          emit(index, c, op, c_.vertex);
        }
        ++next_vid_;
      }
    }

    // (iii), (iv), (v)
    for (int v = 0; v < n; ++v) {
      for (int l = 0; l < k_; ++l) {
        const Mask lb = Mask{1} << l;
        if (s.lab[v] & lb) {
          if (std::popcount(s.lab[v]) > 1) {
            CState c = s;
            c.lab[v] &= ~lb;
            Op op;
            op.kind = EditKind::kDeleteLabel;
            op.a = v;
            op.l1 = l;
            emit(index, c, op, c_.label);
          }
          for (int m = 0; m < k_; ++m) {
            const Mask mb = Mask{1} << m;
            if (s.lab[v] & mb) continue;
            const double cc = change_[l * k_ + m];
            if (!std::isfinite(cc)) continue;
            CState c = s;
            c.lab[v] = (c.lab[v] & ~lb) | mb;
            Op op;
            op.kind = EditKind::kChangeLabel;
            op.a = v;
            op.l1 = l;
            op.l2 = m;
            emit(index, c, op, cc);
          }
        } else {
          CState c = s;
          c.lab[v] |= lb;
          Op op;
          op.kind = EditKind::kAddLabel;
          op.a = v;
          op.l1 = l;
          emit(index, c, op, c_.label);
        }
      }
    }

    // (vi), (vii), (viii), (ix)
    std::array<Row, kMax> down{};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (s.up[i] & bit(j)) down[j] |= bit(i);
      }
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const bool comparable = (s.up[a] & bit(b)) || (s.up[b] & bit(a));
        if (cov[a] & bit(b)) {
          std::array<Row, kMax> adj{};
          for (int i = 0; i < n; ++i) adj[i] = cov[i];
          adj[a] &= static_cast<Row>(~bit(b));
          CState c = s;
          close(n, adj.data(), c.up.data());
          Op op;
          op.kind = EditKind::kDeleteArrow;
          op.a = a;
          op.b = b;
          emit(index, c, op, c_.arrow);

          CState gen = s;
          gen.up[a] &= static_cast<Row>(~bit(b));
          Op gop;
          gop.kind = EditKind::kGeneralizeGraph;
          gop.a = a;
          gop.b = b;
          emit(index, gen, gop, c_.graph);
        }
        if (!comparable) {
          std::array<Row, kMax> adj{};
          for (int i = 0; i < n; ++i) adj[i] = cov[i];
          adj[a] |= bit(b);
          CState c = s;
          if (skeleton_order(n, adj.data(), c.up.data())) {
            Op op;
            op.kind = EditKind::kAddArrow;
            op.a = a;
            op.b = b;
            emit(index, c, op, c_.arrow);
          }
          // Adding (a, b) keeps transitivity iff every x <= a already sits
          // below every y >= b.
          bool closed = true;
          Row xs = down[a];
          while (xs && closed) {
            const int x = std::countr_zero(xs);
            xs &= static_cast<Row>(xs - 1);
            Row missing = static_cast<Row>(s.up[b] & ~s.up[x]);
            if (x == a) missing &= static_cast<Row>(~bit(b));
            closed = missing == 0;
          }
          if (closed) {
            CState spec = s;
            spec.up[a] |= bit(b);
            Op sop;
            sop.kind = EditKind::kSpecializeGraph;
            sop.a = a;
            sop.b = b;
            emit(index, spec, sop, c_.graph);
          }
        }
      }
    }
  }

  std::string name_of(int vid) {
    if (vid < static_cast<int>(w_.graph().vertex_count())) return w_.graph().vertices()[vid];
    auto it = fresh_names_.find(vid);
    if (it != fresh_names_.end()) return it->second;
    std::string name;
    do {
      name = "new" + std::to_string(++fresh_counter_);
    } while (w_.graph().has_vertex(name));
    fresh_names_[vid] = name;
    return name;
  }

  std::vector<VertexPair> arrows_of(const CState& s) {
    std::array<Row, kMax> cov{};
    covers(s.n, s.up.data(), cov.data());
    std::vector<VertexPair> out;
    for (int i = 0; i < s.n; ++i) {
      for (int j = 0; j < s.n; ++j) {
        if (cov[i] & bit(j)) out.emplace_back(name_of(s.vid[i]), name_of(s.vid[j]));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  StateVector labels_of(Mask m) const {
    StateVector out;
    for (int l = 0; l < k_; ++l) {
      if (m >> l & 1U) out.insert(u_.labels()[l]);
    }
    return out;
  }

  std::vector<VertexId> names_in(const CState& s, Row r) {
    std::vector<VertexId> out;
    for (int i = 0; i < s.n; ++i) {
      if (r & bit(i)) out.push_back(name_of(s.vid[i]));
    }
    return out;
  }

  EditOp to_edit_op(const CState& p, const CState& c, const Op& op) {
    switch (op.kind) {
      case EditKind::kAddVertex:
        return EditOp::add_vertex(name_of(c.vid[p.n]), labels_of(op.labels), names_in(p, op.in),
                                  names_in(p, op.out));
      case EditKind::kDeleteVertex: {
        std::array<Row, kMax> cov{};
        covers(p.n, p.up.data(), cov.data());
        Row preds = 0;
        for (int i = 0; i < p.n; ++i) {
          if (cov[i] & bit(op.a)) preds |= bit(i);
        }
        EditOp e = EditOp::delete_vertex(name_of(p.vid[op.a]));
        e.labels = labels_of(p.lab[op.a]);
        e.in = names_in(p, preds);
        e.out = names_in(p, cov[op.a]);
        std::sort(e.in.begin(), e.in.end());
        std::sort(e.out.begin(), e.out.end());
        return e;
      }
      case EditKind::kAddLabel:
        return EditOp::add_label(name_of(p.vid[op.a]), u_.labels()[op.l1]);
      case EditKind::kDeleteLabel:
        return EditOp::delete_label(name_of(p.vid[op.a]), u_.labels()[op.l1]);
      case EditKind::kChangeLabel:
        return EditOp::change_label(name_of(p.vid[op.a]), u_.labels()[op.l1],
                                    u_.labels()[op.l2]);
      case EditKind::kAddArrow:
        return EditOp::add_arrow(name_of(p.vid[op.a]), name_of(p.vid[op.b]));
      case EditKind::kDeleteArrow:
        return EditOp::delete_arrow(name_of(p.vid[op.a]), name_of(p.vid[op.b]));
      case EditKind::kGeneralizeGraph:
      case EditKind::kSpecializeGraph: {
        EditOp e = op.kind == EditKind::kGeneralizeGraph ? EditOp::generalize(arrows_of(c))
                                                          : EditOp::specialize(arrows_of(c));
        e.previous = arrows_of(p);
        return e;
      }
    }
    return {};
  }

  void build_path(int goal, ExactDistance& result) {
    std::vector<int> chain;
    for (int i = goal; nodes_[i].parent >= 0; i = nodes_[i].parent) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    std::vector<EditOp> ops;
    for (int i : chain) {
      const Node& node = nodes_[i];
      const Node& parent = nodes_[node.parent];
      ops.push_back(to_edit_op(parent.s, node.s, node.op));
      result.op_costs.push_back(node.g - parent.g);
    }
    if (!ops.empty()) result.path.emplace(std::move(ops));
  }

  const WiringDiagram& w_;
  const LabelUniverse& u_;
  const CostFunction& c_;
  int k_;
  CState start_;
  CState goal_;
  std::vector<double> change_;
  double pair_ = 2.0;
  double cap_ = 0.0;
  double best_goal_ = 0.0;
  std::string goal_key_;
  int next_vid_ = 0;
  int fresh_counter_ = 0;
  std::unordered_map<int, std::string> fresh_names_;

  Canonicalizer canon_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, double> best_g_;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> pq_;
  std::uint64_t seq_ = 0;
  SearchStats stats_;
};

}  // namespace

ExactDistance wd_distance_exact(const WiringDiagram& w, const WiringDiagram& target,
                                const CostFunction& c, const LabelUniverse& universe,
                                double budget) {
  c.validate();
  if (universe.size() > 64) throw InvalidArgumentError("label universe exceeds 64 labels");
  if (!(budget > 0.0)) throw InvalidArgumentError("budget must be positive");
  for (const WiringDiagram* d : {&w, &target}) {
    if (!in_edit_space(*d)) {
      throw InvalidArgumentError("endpoint is not a skeleton diagram with nonempty state vectors");
    }
  }
  Search search(w, target, c, universe);
  return search.run(budget);
}

}  // namespace analogy
