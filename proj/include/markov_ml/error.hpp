#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace markov_ml {

/// Base class of every error raised by the library. Messages are prefixed
/// with the module that raised them, e.g. "aggregation: ...".
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments: dimension mismatch, out-of-range parameters.
class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed Matrix Market or config input.
class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An iteration produced the zero vector.
class BreakdownError : public Error {
public:
    using Error::Error;
};

/// Jacobi-type sweep with a zero diagonal entry.
class SingularDiagonalError : public Error {
public:
    using Error::Error;
};

/// A multi-node aggregate whose reference weights sum to zero.
class CancellationError : public Error {
public:
    using Error::Error;
};

/// Coarse stochastic operator with an entry below the negativity tolerance.
class SignViolationError : public Error {
public:
    using Error::Error;
};

/// Dense oracle refused (size cap) or failed to converge.
class OracleError : public Error {
public:
    using Error::Error;
};

/// Coarse-level corrections repeatedly increased the fine residual.
class SlowProcessError : public Error {
public:
    SlowProcessError(const std::string &what, std::size_t level)
        : Error(what), level_(level) {}

    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

} // namespace markov_ml
