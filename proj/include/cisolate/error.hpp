#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cisolate {

/// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArithmeticError : public Error {
public:
    using Error::Error;
};

/// Leading coefficient vanishes or degree below 2.
class DegenerateDegree : public Error {
public:
    using Error::Error;
};

/// Malformed numeric or file input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0, int column = 0)
        : Error(format(msg, line, column)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& msg, int line, int column) {
        if (line <= 0) return msg;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
    }

    int line_;
    int column_;
};

/// A precision-doubling loop hit its configured cap.
class PrecisionCapExceeded : public Error {
public:
    PrecisionCapExceeded(const std::string& what, std::int64_t cap)
        : Error(what + " (precision cap " + std::to_string(cap) + " bits)"), cap_(cap) {}
    std::int64_t cap() const { return cap_; }

private:
    std::int64_t cap_;
};

/// Soft comparison could not decide below the cap; both operands were zero.
class SoftCompareExhausted : public Error {
public:
    using Error::Error;
};

/// Test fixture violates its own preconditions (root on a disk boundary, ...).
class IllPosedFixture : public Error {
public:
    using Error::Error;
};

class ReferenceSolverFailed : public Error {
public:
    using Error::Error;
};

}  // namespace cisolate
