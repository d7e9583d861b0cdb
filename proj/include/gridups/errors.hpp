#pragma once

#include <stdexcept>
#include <string>

namespace gridups {

// Process exit codes used by the CLI. The exception hierarchy below maps onto
// them one-to-one.
enum class ExitCode : int {
    ok = 0,
    validation_failure = 1,
    cap_exceeded = 2,
    invariant_violation = 3,
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual ExitCode exit_code() const noexcept = 0;
};

/// Malformed input: bad grid files, non-permutations, colliding markings,
/// out-of-range arguments.
class ValidationError : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::validation_failure; }
};

/// A grid is larger than the configured state-space cap.
class CapExceeded : public Error {
public:
    CapExceeded(int n, int cap);
    int n() const noexcept { return n_; }
    int cap() const noexcept { return cap_; }
    ExitCode exit_code() const noexcept override { return ExitCode::cap_exceeded; }

private:
    int n_;
    int cap_;
};

/// An internal algebraic invariant failed (d^2 != 0, inhomogeneous toggle,
/// non-integer slope, ...). Always a bug or a bad input complex.
class InvariantViolation : public Error {
public:
    using Error::Error;
    ExitCode exit_code() const noexcept override { return ExitCode::invariant_violation; }
};

} // namespace gridups
