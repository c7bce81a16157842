#include "analogy/errors.hpp"

namespace analogy {

namespace {
std::string describe_cycle(const std::vector<std::string>& cycle) {
  std::string out = "graph is not acyclic; cycle (";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += ",";
    out += cycle[i];
  }
  return out + ")";
}
}  // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : Error(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

const char* to_string(InvalidOpReason reason) noexcept {
  switch (reason) {
    case InvalidOpReason::kUnknownVertex: return "unknown-vertex";
    case InvalidOpReason::kUnknownLabel: return "unknown-label";
    case InvalidOpReason::kDuplicateVertex: return "duplicate-vertex";
    case InvalidOpReason::kDuplicateLabel: return "duplicate-label";
    case InvalidOpReason::kEmptyStateVector: return "empty-state-vector";
    case InvalidOpReason::kWouldEmptyStateVector: return "would-empty-state-vector";
    case InvalidOpReason::kWouldEmptyDiagram: return "would-empty-diagram";
    case InvalidOpReason::kWouldBreakWd2: return "would-break-WD2";
    case InvalidOpReason::kWouldBreakSkeleton: return "would-break-skeleton";
    case InvalidOpReason::kUnknownArrow: return "unknown-arrow";
    case InvalidOpReason::kVertexSetMismatch: return "vertex-set-mismatch";
    case InvalidOpReason::kNotIrreducible: return "morphism-not-irreducible";
    case InvalidOpReason::kWrongDirection: return "wrong-direction";
    case InvalidOpReason::kIllTypedLabel: return "ill-typed-label";
    case InvalidOpReason::kUnpricedLabel: return "unpriced-label";
    case InvalidOpReason::kNotWsBullet: return "not-in-Ws";
    case InvalidOpReason::kRecordMismatch: return "recorded-state-mismatch";
  }
  return "unknown";
}

InvalidOpError::InvalidOpError(InvalidOpReason reason, const std::string& detail,
                               std::optional<std::size_t> index)
    : Error(std::string("invalid edit operation (") + to_string(reason) + ")" +
            (index ? " at index " + std::to_string(*index) : std::string()) +
            (detail.empty() ? std::string() : ": " + detail)),
      reason_(reason),
      detail_(detail),
      index_(index) {}

BudgetExceededError::BudgetExceededError(double budget, double best_upper_bound)
    : Error("edit distance exceeds budget " + std::to_string(budget) +
            "; best upper bound found " + std::to_string(best_upper_bound)),
      budget_(budget),
      best_upper_bound_(best_upper_bound) {}

}  // namespace analogy
