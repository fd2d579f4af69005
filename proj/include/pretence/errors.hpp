#pragma once

#include <stdexcept>
#include <string>

namespace pretence {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An `undecided` certainty reached an operation that needs an annotatable level.
class CertaintyError : public Error {
 public:
  using Error::Error;
};

/// Invalid space-tree operation: duplicate id, orphan cocoon, non-ground store, ...
class SpaceError : public Error {
 public:
  using Error::Error;
};

/// An engine limit tripped. `limit()` names the limit (e.g. "max_rounds").
class ResourceError : public Error {
 public:
  ResourceError(std::string limit, const std::string& where)
      : Error("resource limit " + limit + " exceeded: " + where), limit_(std::move(limit)) {}

  const std::string& limit() const noexcept { return limit_; }

 private:
  std::string limit_;
};

/// Scenario/KB reference that does not resolve at run time.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pretence
