#pragma once

#include <stdexcept>
#include <string>

namespace elab {

/// Argument outside the admissible range of a mathematical operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller handed an object that does not satisfy an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A geometric construction has no solution for the given input.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A root-finding problem has no sign change in its search bracket.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A random shape generator produced a sample outside its validity region.
class RejectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace elab
