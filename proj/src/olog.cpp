#include "analogy/olog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <tuple>

#include "analogy/errors.hpp"

namespace analogy {

void Olog::add_type(TypeId id, std::string text) {
  if (type_index_.contains(id)) throw DuplicateIdError(id);
  type_index_.emplace(id, types_.size());
  types_.push_back({std::move(id), std::move(text)});
}

void Olog::add_aspect(AspectId id, std::string text, TypeId source, TypeId target) {
  if (aspect_index_.contains(id)) throw DuplicateIdError(id);
  if (!has_type(source)) throw UnknownTypeError(source);
  if (!has_type(target)) throw UnknownTypeError(target);
  aspect_index_.emplace(id, aspects_.size());
  aspects_.push_back({std::move(id), std::move(text), std::move(source), std::move(target)});
}

void Olog::add_pullback(PullbackSquare sq) {
  for (const AspectId* a : {&sq.p1, &sq.p2, &sq.f, &sq.g}) {
    if (!has_aspect(*a)) throw UnknownIdError("aspect", *a);
  }
  if (!has_type(sq.apex)) throw UnknownTypeError(sq.apex);
  const Aspect& p1 = aspect(sq.p1);
  const Aspect& p2 = aspect(sq.p2);
  const Aspect& f = aspect(sq.f);
  const Aspect& g = aspect(sq.g);
  if (f.target != g.target) {
    throw CospanMismatchError("aspects " + f.id + " and " + g.id + " have different codomains");
  }
  if (p1.source != sq.apex || p2.source != sq.apex || p1.target != f.source ||
      p2.target != g.source) {
    throw CospanMismatchError("projections of " + sq.apex + " do not close the square");
  }
  pullbacks_.push_back(std::move(sq));
}

const OlogType& Olog::type(const TypeId& id) const {
  auto it = type_index_.find(id);
  if (it == type_index_.end()) throw UnknownTypeError(id);
  return types_[it->second];
}

const Aspect& Olog::aspect(const AspectId& id) const {
  auto it = aspect_index_.find(id);
  if (it == aspect_index_.end()) throw UnknownIdError("aspect", id);
  return aspects_[it->second];
}

std::size_t Olog::type_position(const TypeId& id) const {
  auto it = type_index_.find(id);
  if (it == type_index_.end()) throw UnknownTypeError(id);
  return it->second;
}

Olog fiber_product(const Olog& o, const AspectId& f_id, const AspectId& g_id,
                   const FiberProductSpec& spec) {
  if (!o.has_aspect(f_id)) throw UnknownIdError("aspect", f_id);
  if (!o.has_aspect(g_id)) throw UnknownIdError("aspect", g_id);
  const Aspect& f = o.aspect(f_id);
  const Aspect& g = o.aspect(g_id);
  if (f.target != g.target) {
    throw CospanMismatchError("aspects " + f.id + " and " + g.id + " have different codomains");
  }
  if (spec.p1 == spec.p2) throw DuplicateIdError(spec.p1);
  Olog out = o;
  out.add_type(spec.apex, spec.apex_text);
  out.add_aspect(spec.p1, spec.p1_text, spec.apex, f.source);
  out.add_aspect(spec.p2, spec.p2_text, spec.apex, g.source);
  out.add_pullback({spec.apex, spec.p1, spec.p2, f_id, g_id});
  return out;
}

EdgeCost::EdgeCost(double default_cost) : default_cost_(default_cost) {
  if (!(default_cost > 0.0) || !std::isfinite(default_cost)) {
    throw NonpositiveCostError("default aspect cost must be positive and finite");
  }
}

void EdgeCost::set(const AspectId& aspect, double cost) {
  if (!(cost > 0.0) || !std::isfinite(cost)) {
    throw NonpositiveCostError("cost of aspect " + aspect + " must be positive and finite");
  }
  costs_[aspect] = cost;
}

double EdgeCost::of(const AspectId& aspect) const {
  auto it = costs_.find(aspect);
  return it == costs_.end() ? default_cost_ : it->second;
}

std::string OlogDistance::to_string() const {
  if (is_infinite()) return "inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value_);
  (void)ec;
  return std::string(buf, end);
}

OlogPath olog_shortest_path(const Olog& o, const EdgeCost& c, const TypeId& x, const TypeId& y) {
  const std::size_t src = o.type_position(x);
  const std::size_t dst = o.type_position(y);
  for (const auto& [id, cost] : c.overrides()) {
    if (!(cost > 0.0)) throw NonpositiveCostError("cost of aspect " + id + " must be positive");
  }

  const std::size_t n = o.types().size();
  struct Step {
    std::size_t to;
    std::size_t aspect;
  };
  std::vector<std::vector<Step>> adj(n);
  const auto& aspects = o.aspects();
  for (std::size_t a = 0; a < aspects.size(); ++a) {
    const std::size_t s = o.type_position(aspects[a].source);
    const std::size_t t = o.type_position(aspects[a].target);
    adj[s].push_back({t, a});
    if (s != t) adj[t].push_back({s, a});
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> prev_type(n, kNone), prev_aspect(n, kNone);
  std::vector<bool> done(n, false);
  // Ties broken by type position so witnesses are reproducible.
  using Entry = std::tuple<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.emplace(0.0, src);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = true;
    if (u == dst) break;
    for (const Step& s : adj[u]) {
      const double nd = d + c.of(aspects[s.aspect].id);
      if (nd < dist[s.to] ||
          (nd == dist[s.to] && !done[s.to] && u < prev_type[s.to])) {
        dist[s.to] = nd;
        prev_type[s.to] = u;
        prev_aspect[s.to] = s.aspect;
        pq.emplace(nd, s.to);
      }
    }
  }

  OlogPath path;
  if (dist[dst] == kInf) return path;
  path.distance = OlogDistance::finite(dist[dst]);
  for (std::size_t v = dst; v != src; v = prev_type[v]) {
    path.types.push_back(o.types()[v].id);
    path.aspects.push_back(aspects[prev_aspect[v]].id);
  }
  path.types.push_back(o.types()[src].id);
  std::reverse(path.types.begin(), path.types.end());
  std::reverse(path.aspects.begin(), path.aspects.end());
  return path;
}

OlogDistance olog_distance(const Olog& o, const EdgeCost& c, const TypeId& x, const TypeId& y) {
  return olog_shortest_path(o, c, x, y).distance;
}

RelationPatternIds add_relation_pattern(Olog& o, const std::string& prefix, const TypeId& kind1,
                                        const TypeId& kind2, const std::string& relation_text) {
  const std::string k1_text = o.type(kind1).text;
  const std::string k2_text = o.type(kind2).text;
  RelationPatternIds ids{prefix + ".pair", prefix + ".related", prefix + ".first",
                         prefix + ".second", prefix + ".is"};
  const std::string pair_text = "a pair (x, y) where x is " + k1_text + " and y is " + k2_text;
  o.add_type(ids.pair, pair_text);
  o.add_type(ids.related, pair_text + " and x " + relation_text + " y");
  o.add_aspect(ids.first, "yields, as x,", ids.pair, kind1);
  o.add_aspect(ids.second, "yields, as y,", ids.pair, kind2);
  o.add_aspect(ids.inclusion, "is", ids.related, ids.pair);
  return ids;
}

IndicatorPatternIds add_indicator_pattern(Olog& o, const std::string& prefix, const TypeId& pairs,
                                          const std::string& relation_text) {
  IndicatorPatternIds ids{"{0,1}", "{0}", "{1}", prefix + ".indicator", "{0}.in", "{1}.in",
                          prefix + ".indicator0", prefix + ".indicator1"};
  if (!o.has_type(pairs)) throw UnknownTypeError(pairs);
  if (!o.has_type(ids.booleans)) o.add_type(ids.booleans, "{0,1}");
  if (!o.has_type(ids.zero)) o.add_type(ids.zero, "{0}");
  if (!o.has_type(ids.one)) o.add_type(ids.one, "{1}");
  if (!o.has_aspect(ids.include_zero)) o.add_aspect(ids.include_zero, "is", ids.zero, ids.booleans);
  if (!o.has_aspect(ids.include_one)) o.add_aspect(ids.include_one, "is", ids.one, ids.booleans);
  const std::string pairs_text = o.type(pairs).text;
  o.add_aspect(ids.indicator, "has, as " + relation_text + " indicator,", pairs, ids.booleans);
  o = fiber_product(o, ids.indicator, ids.include_zero,
                    {ids.unrelated, pairs_text + " whose indicator is 0", ids.unrelated + ".p1",
                     "is", ids.unrelated + ".p2", "has, as indicator,"});
  o = fiber_product(o, ids.indicator, ids.include_one,
                    {ids.related, pairs_text + " whose indicator is 1", ids.related + ".p1",
                     "is", ids.related + ".p2", "has, as indicator,"});
  return ids;
}

}  // namespace analogy
