#include "analogy/trace.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "analogy/errors.hpp"

namespace analogy {

Trace::Trace(std::vector<Sample> samples, std::string time_unit)
    : samples_(std::move(samples)), time_unit_(std::move(time_unit)) {
  std::stable_sort(samples_.begin(), samples_.end(),
                   [](const Sample& a, const Sample& b) { return a.t < b.t; });
  for (const Sample& s : samples_) {
    auto& series = series_[{s.sensor, s.arg}];
    if (!series.empty() && series.back().first == s.t) {
      throw ParseError("two samples of (" + s.sensor + "," + s.arg + ") at t=" +
                       Value(s.t).to_string());
    }
    series.emplace_back(s.t, s.value);
  }
}

std::optional<Value> Trace::value_at(const std::string& sensor, const std::string& arg,
                                     double t) const {
  auto it = series_.find({sensor, arg});
  if (it == series_.end()) return std::nullopt;
  const auto& series = it->second;
  auto pos = std::upper_bound(series.begin(), series.end(), t,
                              [](double x, const auto& p) { return x < p.first; });
  if (pos == series.begin()) return std::nullopt;
  return std::prev(pos)->second;
}

std::vector<double> Trace::timestamps() const {
  std::vector<double> out;
  for (const Sample& s : samples_) {
    if (out.empty() || out.back() != s.t) out.push_back(s.t);
  }
  return out;
}

std::optional<Value> eval_sensor(const Trace& tr, const SensingFunctionDecl& decl,
                                 const std::string& arg, double t) {
  if (decl.kind != SensorKind::kDerivative) return tr.value_at(decl.id, arg, t);
  const auto now = tr.value_at(decl.base, arg, t);
  const auto before = tr.value_at(decl.base, arg, t - decl.window);
  if (!now || !before || !now->is_number() || !before->is_number()) return std::nullopt;
  return Value(now->number() - before->number());
}

bool state_vector_holds(const Trace& tr, const SensorCatalog& catalog, const StateVector& labels,
                        double t) {
  for (const Label& l : labels) {
    const auto v = eval_sensor(tr, catalog.get(l.sensor), l.arg, t);
    if (!v || *v != l.value) return false;
  }
  return true;
}

std::vector<double> candidate_times(const Trace& tr, const WiringDiagram& w) {
  std::set<double> windows{0.0};
  for (const auto& [v, labels] : w.state_vectors()) {
    for (const Label& l : labels) {
      const SensingFunctionDecl& d = w.catalog().get(l.sensor);
      if (d.kind == SensorKind::kDerivative) windows.insert(d.window);
    }
  }
  std::set<double> times;
  for (double t : tr.timestamps()) {
    for (double dw : windows) times.insert(t + dw);
  }
  return {times.begin(), times.end()};
}

namespace {

struct Matcher {
  std::vector<std::vector<double>> candidates;  // per topological position
  std::vector<std::vector<std::size_t>> preds;  // topological positions
  std::vector<double> times;
  std::optional<std::size_t> limit;
  std::vector<std::vector<double>> found;

  bool full() const { return limit && found.size() >= *limit; }

  void search(std::size_t i) {
    if (full()) return;
    if (i == candidates.size()) {
      found.push_back(times);
      return;
    }
    // Earliest feasible time: strictly after every predecessor.
    double earliest = -std::numeric_limits<double>::infinity();
    for (std::size_t p : preds[i]) earliest = std::max(earliest, times[p]);
    const auto& c = candidates[i];
    auto it = std::upper_bound(c.begin(), c.end(), earliest);
    for (; it != c.end() && !full(); ++it) {
      times[i] = *it;
      search(i + 1);
    }
  }
};

}  // namespace

std::vector<Assignment> match_wd(const Trace& tr, const WiringDiagram& w,
                                 std::optional<std::size_t> limit) {
  const std::vector<VertexId> order = validate_wd_graph(w.graph()).order();
  const std::vector<double> times = candidate_times(tr, w);

  std::map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

  Matcher m;
  m.limit = limit;
  m.candidates.resize(order.size());
  m.preds.resize(order.size());
  m.times.assign(order.size(), 0.0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const StateVector& labels = w.state_vector(order[i]);
    for (double t : times) {
      if (state_vector_holds(tr, w.catalog(), labels, t)) m.candidates[i].push_back(t);
    }
    if (m.candidates[i].empty()) return {};
  }
  for (const Arrow& a : w.graph().arrows()) {
    m.preds[pos[a.target]].push_back(pos[a.source]);
  }
  if (limit && *limit == 0) return {};
  m.search(0);

  std::vector<Assignment> out;
  for (const auto& ts : m.found) {
    Assignment a;
    for (std::size_t i = 0; i < order.size(); ++i) a[order[i]] = ts[i];
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace analogy
