#pragma once

#include <stdexcept>
#include <string>

namespace degseq {

/// Degree sequence cannot be realized by a simple graph.
class NotGraphicalError : public std::invalid_argument {
 public:
  explicit NotGraphicalError(const std::string& what) : std::invalid_argument(what) {}
};

/// Exact enumeration was requested beyond the configured vertex or family cap.
class OracleCapError : public std::runtime_error {
 public:
  explicit OracleCapError(const std::string& what) : std::runtime_error(what) {}
};

/// A conditioning event has no members (empty family).
class EmptyConditioningError : public std::domain_error {
 public:
  explicit EmptyConditioningError(const std::string& what) : std::domain_error(what) {}
};

/// Fewer than two positive degrees: no weighted pair can be proposed.
class DegenerateSequenceError : public std::invalid_argument {
 public:
  explicit DegenerateSequenceError(const std::string& what) : std::invalid_argument(what) {}
};

/// A sample fell outside the support of the reference law.
class OutOfSupportError : public std::runtime_error {
 public:
  explicit OutOfSupportError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace degseq
