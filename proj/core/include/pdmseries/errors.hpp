#pragma once

#include <stdexcept>
#include <string>

namespace pdmseries {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter outside its admissible range (negative coupling, lambda <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Energy is not below threshold (E >= 0, or |E| too close to 0).
class BoundStateError : public Error {
 public:
  using Error::Error;
};

/// The recurrence cannot be solved explicitly for these inputs.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class DegenerateWavefunctionError : public Error {
 public:
  using Error::Error;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class WrongStateError : public Error {
 public:
  WrongStateError(const std::string& what, int found_nodes)
      : Error(what), found_nodes_(found_nodes) {}
  int found_nodes() const noexcept { return found_nodes_; }

 private:
  int found_nodes_;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdmseries
