#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avxfreq {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad table data, unknown preset, missing cost entry, out-of-range core count.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. line() is 1-based, 0 when no line applies.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

/// Mathematical precondition violated (non-positive frequency, no headroom).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A policy asked the engine to do something the contract forbids.
class ContractError : public Error {
public:
    using Error::Error;
};

} // namespace avxfreq
