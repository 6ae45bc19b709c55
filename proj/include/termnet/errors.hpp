#pragma once
// Error types shared by all modules. DataError covers malformed input
// (exit code 1 in the CLI), IoError covers filesystem failures (exit code 2).

#include <stdexcept>
#include <string>

namespace termnet {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data.
class DataError : public Error {
public:
    using Error::Error;
};

// Filesystem or stream failure.
class IoError : public Error {
public:
    using Error::Error;
};

// Parse failure in a line-oriented input; carries the 1-based line number.
class ParseError : public DataError {
public:
    ParseError(const std::string& msg, int line)
        : DataError("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A loaded meta-rule violates one of its structural invariants.
class ValidationError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace termnet
