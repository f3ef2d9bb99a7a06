#pragma once

#include <stdexcept>
#include <string>

namespace ccf {

/// Malformed or inconsistent user input (CLI exit code 1).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A step, precision or period budget ran out before an answer was certified
/// (CLI exit code 3).
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The certified box could not decide the partial quotient even at the
/// precision cap.
class DigitUnresolved : public BudgetExhausted {
public:
    DigitUnresolved(std::size_t step, const std::string& detail)
        : BudgetExhausted("digit unresolved at step " + std::to_string(step) +
                          (detail.empty() ? std::string() : " (" + detail + ")")),
          step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Violation of an identity or theorem that exact arithmetic must uphold.
/// Seeing one means an implementation bug or an inconsistent input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ccf
