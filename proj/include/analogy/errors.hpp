#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace analogy {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files (JSON syntax or schema).
class ParseError : public Error {
 public:
  using Error::Error;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(const std::string& id)
      : Error("duplicate id: " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class UnknownIdError : public Error {
 public:
  UnknownIdError(const std::string& what_kind, const std::string& id)
      : Error("unknown " + what_kind + ": " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class UnknownTypeError : public UnknownIdError {
 public:
  explicit UnknownTypeError(const std::string& id) : UnknownIdError("type", id) {}
};

class UnknownSensorError : public UnknownIdError {
 public:
  explicit UnknownSensorError(const std::string& id) : UnknownIdError("sensor", id) {}
};

class UnknownRelationError : public UnknownIdError {
 public:
  explicit UnknownRelationError(const std::string& id) : UnknownIdError("relation", id) {}
};

class EntityNotInSetError : public Error {
 public:
  using Error::Error;
};

// The graph has a loop or an oriented cycle; cycle() lists the vertices
// along it with the first vertex repeated at the end.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class NotPartialOrderError : public Error {
 public:
  using Error::Error;
};

class NotSkeletonError : public Error {
 public:
  using Error::Error;
};

class VertexSetMismatchError : public Error {
 public:
  VertexSetMismatchError() : Error("graphs are defined over different vertex sets") {}
};

class CospanMismatchError : public Error {
 public:
  using Error::Error;
};

class NonpositiveCostError : public Error {
 public:
  using Error::Error;
};

class NonNumericCodomainError : public Error {
 public:
  using Error::Error;
};

class InvalidLabelError : public Error {
 public:
  using Error::Error;
};

class SensorNotObservableError : public Error {
 public:
  using Error::Error;
};

enum class InvalidOpReason {
  kUnknownVertex,
  kUnknownLabel,
  kDuplicateVertex,
  kDuplicateLabel,
  kEmptyStateVector,
  kWouldEmptyStateVector,
  kWouldEmptyDiagram,
  kWouldBreakWd2,
  kWouldBreakSkeleton,
  kUnknownArrow,
  kVertexSetMismatch,
  kNotIrreducible,
  kWrongDirection,
  kIllTypedLabel,
  kUnpricedLabel,
  kNotWsBullet,
  kRecordMismatch,
};

const char* to_string(InvalidOpReason reason) noexcept;

class InvalidOpError : public Error {
 public:
  InvalidOpError(InvalidOpReason reason, const std::string& detail,
                 std::optional<std::size_t> index = std::nullopt);
  InvalidOpReason reason() const noexcept { return reason_; }
  // Position of the failing op inside an edit path, when replaying one.
  std::optional<std::size_t> index() const noexcept { return index_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  InvalidOpReason reason_;
  std::string detail_;
  std::optional<std::size_t> index_;
};

class PathEndpointMismatchError : public Error {
 public:
  using Error::Error;
};

class EmptyPathError : public Error {
 public:
  EmptyPathError() : Error("an edit path needs at least one operation") {}
};

// A precondition on the arguments of a library call does not hold.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(double budget, double best_upper_bound);
  double budget() const noexcept { return budget_; }
  double best_upper_bound() const noexcept { return best_upper_bound_; }

 private:
  double budget_;
  double best_upper_bound_;
};

}  // namespace analogy
