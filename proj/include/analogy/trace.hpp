#pragma once

// Time-indexed sensor samples and detection of a wiring diagram's process
// in them. Sensors are piecewise constant between samples.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "analogy/wiring_diagram.hpp"

namespace analogy {

struct Sample {
  double t = 0.0;
  std::string sensor;
  std::string arg;
  Value value;

  friend bool operator==(const Sample&, const Sample&) = default;
};

class Trace {
 public:
  Trace() = default;
  // Sorts samples by time (stable). Throws ParseError when a (sensor, arg)
  // pair has two values at one timestamp.
  explicit Trace(std::vector<Sample> samples, std::string time_unit = "s");

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const std::string& time_unit() const noexcept { return time_unit_; }
  bool empty() const noexcept { return samples_.empty(); }

  // Last sample of (sensor, arg) at or before t.
  std::optional<Value> value_at(const std::string& sensor, const std::string& arg, double t) const;
  // Distinct sample times, ascending.
  std::vector<double> timestamps() const;

 private:
  std::vector<Sample> samples_;
  std::string time_unit_ = "s";
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<double, Value>>> series_;
};

// Base, relation and abstract sensors read their own samples. A derivative
// reads its base: value(t) - value(t - window), undefined when either side
// is undefined or not numeric.
std::optional<Value> eval_sensor(const Trace& tr, const SensingFunctionDecl& decl,
                                 const std::string& arg, double t);

// Every label (F, x, y) has eval_sensor(F, x, t) == y. Throws
// UnknownSensorError for a sensor missing from the catalog.
bool state_vector_holds(const Trace& tr, const SensorCatalog& catalog, const StateVector& labels,
                        double t);

// Times at which some sensor used by w may change value: sample times and,
// for derivatives, sample times shifted by the window. Every state vector
// is constant between consecutive candidates.
std::vector<double> candidate_times(const Trace& tr, const WiringDiagram& w);

using Assignment = std::map<VertexId, double>;

// All maps vertex -> candidate time at which the vertex's state vector holds
// and that strictly increase along every arrow, in lexicographic order of
// the times along a topological order. `limit` caps the number returned.
// Throws CycleError or UnknownSensorError.
std::vector<Assignment> match_wd(const Trace& tr, const WiringDiagram& w,
                                 std::optional<std::size_t> limit = std::nullopt);

}  // namespace analogy
