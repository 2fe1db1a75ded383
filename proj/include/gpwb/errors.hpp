// Error types shared by every module.  Input validation failures use
// std::invalid_argument; the two classes below cover the remaining cases.
#pragma once

#include <stdexcept>
#include <string>

namespace gpwb {

// An exploration or enumeration exceeded its configured budget (caps on
// circuit searches, geodesic counts, ball sizes, window schedules).  The CLI
// maps this to exit code 2.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A structural check that is expected to hold unconditionally failed.  This
// signals either an implementation bug or a genuine counterexample to a
// verified statement, so it is never downgraded to a soft status.  The CLI
// maps this to exit code 1.
class VerificationFailure : public std::runtime_error {
 public:
  explicit VerificationFailure(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace gpwb
