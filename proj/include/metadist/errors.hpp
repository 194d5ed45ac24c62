#pragma once

#include <stdexcept>
#include <string>

namespace metadist {

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Iterative method exhausted its budget before meeting tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fewer moments supplied than the requested expansion order needs.
class InsufficientMomentsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Moments do not describe a nondegenerate distribution on [0,1].
class DegenerateMomentsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// No transmit power can satisfy the requested reliability constraint.
class InfeasibleQosError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A point-process realization without any base station.
class EmptyRealizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace metadist
