#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ringdens {

/// Raised when a requested computation exceeds its declared budget.  The
/// message names the budget that would succeed.
class BudgetError : public std::runtime_error {
  public:
    BudgetError(const std::string& what, std::uint64_t required)
        : std::runtime_error(what + " (required budget: " + std::to_string(required) + ")"),
          required_budget(required) {}

    std::uint64_t required_budget;
};

/// Two independent evaluation routes disagreed; this is a bug signal, never
/// an input error.
class ConsistencyFault : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace ringdens
