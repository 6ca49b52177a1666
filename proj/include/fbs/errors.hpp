#pragma once

#include <stdexcept>
#include <string>

namespace fbs {

/// Malformed or inconsistent input (bad index, wrong length, non-dominant weight, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Well-formed input outside the supported class, e.g. a Levi that is not of type A.
class UnsupportedInput : public std::runtime_error {
public:
    explicit UnsupportedInput(const std::string& what) : std::runtime_error(what) {}
};

/// A generation step exceeded its configured vertex/element budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fbs
