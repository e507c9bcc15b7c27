#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cluedesk {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad configuration or data files, including scripted-fixture misses.
class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what),
          source_(std::move(source)), line_(line) {}

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

// Network-level failure talking to a provider or daemon; callers may retry.
class TransportError : public Error {
public:
    using Error::Error;
};

// Provider answered but the answer is unusable (4xx, malformed body).
class ProviderError : public Error {
public:
    using Error::Error;
};

// A caller broke an operation's precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

class NotReadyError : public Error {
public:
    using Error::Error;
};

class ConsentRequiredError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class InvalidActionError : public Error {
public:
    using Error::Error;
};

// Outbound text still contains a detector hit.
class PrivacyViolation : public Error {
public:
    using Error::Error;
};

} // namespace cluedesk
