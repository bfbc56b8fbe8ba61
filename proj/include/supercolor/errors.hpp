#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace supercolor {

/// Input violates the hypotheses a solver requires.
class HypothesisViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A proof-derived runtime assertion failed. Never expected on valid input;
/// it means the implementation diverged from the argument it encodes.
class InternalAssertion : public std::logic_error {
public:
    InternalAssertion(std::string claim, const std::string& detail)
        : std::logic_error(claim + ": " + detail), claim_(std::move(claim)) {}

    const std::string& claim() const noexcept { return claim_; }

private:
    std::string claim_;
};

/// Malformed instance data (bad ids, duplicate sets, out-of-range colors).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or step budget was exhausted.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A random generator could not produce a valid instance within its retries.
class GenerationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SUPERCOLOR_CLAIM(cond, claim, detail)                               \
    do {                                                                     \
        if (!(cond)) throw ::supercolor::InternalAssertion((claim), (detail)); \
    } while (0)

} // namespace supercolor
