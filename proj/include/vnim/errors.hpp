#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vnim {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph input: duplicate ids, dangling endpoints, bad weights.
class GraphError : public Error
{
public:
    using Error::Error;
};

class UnknownVertex : public Error
{
public:
    explicit UnknownVertex(const std::string& id) : Error("unknown vertex '" + id + "'") {}
};

class IllegalMove : public Error
{
public:
    using Error::Error;
};

class TerminalPosition : public Error
{
public:
    TerminalPosition() : Error("position is terminal") {}
};

/// A solver was handed an instance outside its hypotheses.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

/// The instance is well formed but no closed form is known for it.
class OutOfScope : public Error
{
public:
    using Error::Error;
};

/// Misère play combined with Stockman's rules.
class UnsupportedCombination : public Error
{
public:
    UnsupportedCombination() : Error("misere convention is not supported for the stockman ruleset") {}
};

class BudgetExceeded : public Error
{
public:
    using Error::Error;
};

class ParseError : public Error
{
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace vnim
