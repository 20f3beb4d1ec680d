#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tactile {

// Every failure raised by the toolkit derives from Error. The CLI maps the
// category to its exit code.
class Error : public std::runtime_error {
public:
    enum class Category { usage, data, numerical };

    Error(Category category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    Category category() const noexcept { return category_; }

private:
    Category category_;
};

/// Argument outside the mathematical domain of an operation (negative mass, λ < 1, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(Category::usage, what) {}
};

/// Caller misuse: empty inputs, mismatched lengths, bad flag values.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(Category::usage, what) {}
};

/// Inconsistent configuration, e.g. an unbalanced bridge or a model/units mismatch.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(Category::data, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(Category::data, what) {}
};

/// Malformed text input. line() is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(Category::data, line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A sample line with the wrong number of channels.
class ArityError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Out-of-order timestamps in a sample or frame stream.
class StreamError : public ParseError {
public:
    using ParseError::ParseError;
};

class UnderdeterminedFitError : public Error {
public:
    UnderdeterminedFitError(int order, const std::string& what)
        : Error(Category::numerical, what), order_(order) {}

    int order() const noexcept { return order_; }

private:
    int order_;
};

class SingularFitError : public Error {
public:
    SingularFitError(int order, const std::string& what)
        : Error(Category::numerical, what), order_(order) {}

    int order() const noexcept { return order_; }

private:
    int order_;
};

}  // namespace tactile
