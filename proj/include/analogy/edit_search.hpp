#pragma once

// Exact edit distance by best-first search over isomorphism classes of
// diagrams whose labels come from a finite universe.

#include <cstddef>
#include <optional>
#include <vector>

#include "analogy/edit.hpp"

namespace analogy {

class LabelUniverse {
 public:
  LabelUniverse() = default;
  explicit LabelUniverse(std::vector<Label> labels);

  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool contains(const Label& l) const;
  std::optional<std::size_t> index_of(const Label& l) const;
  void insert(const Label& l);

 private:
  std::vector<Label> labels_;  // sorted, unique
};

// Labels occurring in either diagram.
LabelUniverse endpoint_universe(const WiringDiagram& a, const WiringDiagram& b);

// Endpoint labels, plus (for olog-backed costs) every label with a known
// olog type within `radius` of the type of some endpoint label. Candidate
// labels are the explicit label->type entries and the finite labels of
// sensors declared in either catalog.
LabelUniverse default_universe(const WiringDiagram& a, const WiringDiagram& b,
                               const CostFunction& c, double radius = 0.0);

struct SearchStats {
  std::size_t expanded = 0;
  std::size_t generated = 0;
};

struct ExactDistance {
  double distance = 0.0;
  std::optional<EditPath> path;  // absent when the diagrams are isomorphic
  std::vector<double> op_costs;
  double initial_upper_bound = 0.0;
  SearchStats stats;
};

// Largest diagram the search represents.
inline constexpr std::size_t kMaxSearchVertices = 12;

// Minimum path cost from w to an isomorphic copy of target, using only
// labels from the universe. Throws BudgetExceededError when the distance
// exceeds `budget`, and InvalidArgumentError when an endpoint is outside
// the edit space, uses labels outside the universe, or is too large.
ExactDistance wd_distance_exact(const WiringDiagram& w, const WiringDiagram& target,
                                const CostFunction& c, const LabelUniverse& universe,
                                double budget);

}  // namespace analogy
