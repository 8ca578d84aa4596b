#ifndef FLIPSPAN_ERRORS_H_
#define FLIPSPAN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace flipspan {

// Malformed caller input: bad labels, wrong n, trees on different point sets.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configurable search or enumeration cap was hit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural guarantee of the underlying combinatorics failed to hold.
// Seeing this is always a bug report: either the implementation is wrong or
// a claimed property is false on the reported instance.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define FLIPSPAN_CHECK(cond, msg)                                         \
  do {                                                                    \
    if (!(cond)) {                                                        \
      throw ::flipspan::InvariantViolation(std::string(__func__) + ": " + \
                                           (msg));                        \
    }                                                                     \
  } while (false)

}  // namespace flipspan

#endif  // FLIPSPAN_ERRORS_H_
