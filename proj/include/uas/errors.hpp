#pragma once

#include <stdexcept>
#include <string>

namespace uas {

// Exit codes used by the CLI: 0 success, 2 validation failure,
// 3 cap exceeded, 4 I/O.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct CapError : std::runtime_error {
  explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Reconstruction failures.
struct NotQualified : ValidationError {
  explicit NotQualified(const std::string& what) : ValidationError(what) {}
};

struct InconsistentShares : ValidationError {
  explicit InconsistentShares(const std::string& what) : ValidationError(what) {}
};

// Independent-sequence certificate rejection. `condition` names the
// first violated condition, `index` the step it failed at (-1 when the
// condition is not per-step).
struct InvalidCertificate : ValidationError {
  enum class Condition { BSequence, Containment, Independence, Qualification };

  InvalidCertificate(Condition cond, int index, const std::string& what)
      : ValidationError(what), condition(cond), index(index) {}

  Condition condition;
  int index;
};

}  // namespace uas
