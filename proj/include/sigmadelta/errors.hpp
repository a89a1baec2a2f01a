#pragma once

#include <stdexcept>
#include <string>

namespace sigmadelta {

/// Base of every error raised by the library. The CLI maps these to exit code 1
/// (mathematical verdicts) or 2 (usage / parse problems).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define SIGMADELTA_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                         \
    public:                                                             \
        using Error::Error;                                             \
        const char* kind() const noexcept override { return #Name; }    \
    };

SIGMADELTA_DEFINE_ERROR(DivisionByZero)
SIGMADELTA_DEFINE_ERROR(ShapeError)
SIGMADELTA_DEFINE_ERROR(NotAUnit)
SIGMADELTA_DEFINE_ERROR(ZeroPolynomial)
SIGMADELTA_DEFINE_ERROR(InvalidSpecialization)
SIGMADELTA_DEFINE_ERROR(SingularSpecialization)
SIGMADELTA_DEFINE_ERROR(EmptyInput)
SIGMADELTA_DEFINE_ERROR(NotInG)
SIGMADELTA_DEFINE_ERROR(DomainError)

#undef SIGMADELTA_DEFINE_ERROR

/// Malformed JSON, with 1-based position.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    const char* kind() const noexcept override { return "ParseError"; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A cell that does not parse under the expression grammar.
class ExprError : public Error {
public:
    ExprError(std::string cell, const std::string& message)
        : Error(cell.empty() ? message : cell + ": " + message), cell_(std::move(cell)) {}
    const char* kind() const noexcept override { return "ExprError"; }
    const std::string& cell() const noexcept { return cell_; }

private:
    std::string cell_;
};

class UsageError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "UsageError"; }
};

}  // namespace sigmadelta
