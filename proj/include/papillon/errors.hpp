#pragma once

#include <stdexcept>
#include <string>

namespace papillon {

// Exit codes used by the CLI. Library code throws; the CLI maps exceptions
// onto these.
enum class ExitCode : int {
    Ok = 0,
    Usage = 2,
    Invariant = 3,
    Io = 4,
};

class Error : public std::runtime_error {
  public:
    Error(const std::string& msg, ExitCode code)
        : std::runtime_error(msg), code_(code) {}

    ExitCode exit_code() const noexcept { return code_; }

  private:
    ExitCode code_;
};

// Bad user-supplied value (label out of range, invalid family parameter, ...).
struct ParameterError : Error {
    explicit ParameterError(const std::string& msg) : Error(msg, ExitCode::Usage) {}
};

// Requested graph exceeds the configured node cap.
struct SizeError : Error {
    explicit SizeError(const std::string& msg) : Error(msg, ExitCode::Usage) {}
};

// A route exceeded its hop cap; signals a construction bug, not a user error.
struct NonTerminationError : Error {
    explicit NonTerminationError(const std::string& msg) : Error(msg, ExitCode::Invariant) {}
};

// A structural property that must hold on every valid instance failed.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg, ExitCode::Invariant) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg, ExitCode::Io) {}
};

} // namespace papillon
