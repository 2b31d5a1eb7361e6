#pragma once

#include <stdexcept>
#include <string>

namespace greedysum {

/// An argument outside the domain of an operation (e.g. lambda < 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A parameter tuple or instance breaks a named side condition. what()
/// names the violated inequality.
class ConstraintViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The Xpg g-sequence is too short for the indices involved.
class InsufficientLevels : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// More greedy sets than the caller's cap.
class TieExplosion : public std::length_error {
public:
    using std::length_error::length_error;
};

/// An exhaustive oracle was asked to enumerate beyond its budget.
class BudgetExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace greedysum
