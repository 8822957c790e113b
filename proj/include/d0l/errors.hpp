#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace d0l {

enum class ParseErrorKind { syntax, duplicate_rule, unknown_letter, missing_axiom };

const char* to_string(ParseErrorKind kind);

/// Malformed system or coding text. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& what);

    ParseErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
};

/// A configured length, step or state budget was exhausted. Not a verdict.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a search that is proven to terminate hits its safety cap.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace d0l
