#ifndef REPLAYGEN_ERRORS_HPP
#define REPLAYGEN_ERRORS_HPP

#include <stdexcept>

namespace replaygen {

// A game-loop state that the rules say cannot be reached (for instance an
// empty sure set at output time). Maps to its own process exit code so
// harnesses can tell it apart from ordinary failures.
struct ProtocolViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A single round spent more membership-oracle evaluations than its budget
// allows; turns a would-be runaway round into a diagnosable error.
struct QueryBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace replaygen

#endif
