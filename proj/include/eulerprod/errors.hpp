#pragma once

#include <stdexcept>
#include <string>

namespace eulerprod {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or inconsistent input: malformed files, domain violations,
// mismatched rings, unsupported evaluation regions. CLI exit code 2.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A proven theorem failed on valid input. This is a bug in the
// implementation, never a user error. CLI exit code 3.
struct CorrectnessAlarm : Error {
    explicit CorrectnessAlarm(const std::string& msg) : Error(msg) {}
};

struct ResourceLimitError : ValidationError {
    explicit ResourceLimitError(const std::string& msg) : ValidationError(msg) {}
};

struct UnsupportedRegionError : ValidationError {
    explicit UnsupportedRegionError(const std::string& msg) : ValidationError(msg) {}
};

}  // namespace eulerprod
