#pragma once

#include <stdexcept>

namespace rectdim {

// Enumeration/construction budgets (node caps, interval caps) blown.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical self-check failed (sandwich bounds, geometry audits,
// non-convergent brackets). Distinct from bad input.
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rectdim
