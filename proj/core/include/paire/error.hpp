#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paire {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number of the offending row.
class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class LoadError : public Error {
public:
    using Error::Error;
};

class LookupError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Shape or alignment mismatch between arguments.
class ContractError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

class SplitError : public Error {
public:
    SplitError(const std::string& what, double achievable_fraction)
        : Error(what), achievable_fraction_(achievable_fraction) {}

    double achievable_fraction() const noexcept { return achievable_fraction_; }

private:
    double achievable_fraction_;
};

class TaskError : public Error {
public:
    using Error::Error;
};

class ClassifierError : public Error {
public:
    using Error::Error;
};

class MetricError : public Error {
public:
    using Error::Error;
};

}  // namespace paire
