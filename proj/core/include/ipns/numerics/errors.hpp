#pragma once

#include <stdexcept>
#include <string>

namespace ipns {

/// Tensor or vector dimensions disagree with what an operation expects.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (non-finite values,
/// empty sets where at least one element is required).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A replay buffer holds fewer transitions than a batch requires.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The novelty pipeline has no valid high-visitation-density point yet.
class NotReadyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid run, agent or pipeline configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or incompatible checkpoint / model file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ipns
