#pragma once

#include <stdexcept>
#include <string>

namespace hyperprox {

enum class ErrorKind {
    invalid_argument,
    validation_failed,
    cap_exceeded,
    not_open,
    spec_invalid,
    mismatched_hyperspace,
    parse_error,
    invalid_target,
    malformed_witness,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when an exhaustive operation is asked to run above its configured size cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& operation, int requested, int cap)
        : Error(ErrorKind::cap_exceeded,
                operation + ": n=" + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
          requested_(requested), cap_(cap) {}

    int requested() const noexcept { return requested_; }
    int cap() const noexcept { return cap_; }

private:
    int requested_;
    int cap_;
};

}  // namespace hyperprox
