#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tensorlog {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed formula or fact-file text. Line and column are 1-based.
class SyntaxError : public Error
{
public:
    SyntaxError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class ArityError : public Error
{
public:
    using Error::Error;
};

/// DNF/CNF conversion would exceed the configured group cap.
class NormalFormLimitError : public Error
{
public:
    using Error::Error;
};

class ModelError : public Error
{
public:
    using Error::Error;
};

class TensorError : public Error
{
public:
    using Error::Error;
};

class CompileError : public Error
{
public:
    using Error::Error;
};

class EvalError : public Error
{
public:
    using Error::Error;
};

class SolverError : public Error
{
public:
    using Error::Error;
};

} // namespace tensorlog
