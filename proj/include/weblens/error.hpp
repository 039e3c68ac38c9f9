#pragma once

#include <stdexcept>
#include <string>

namespace weblens {

// Error taxonomy mirrors the CLI exit codes: ConfigError -> 1 (parameter
// misuse), DataError -> 2 (malformed or degenerate input), NumericalError
// and its subclasses -> 3 (solver failure).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// Conjugate gradient ran out of iterations before reaching tolerance.
class ConvergenceError : public NumericalError {
public:
    explicit ConvergenceError(const std::string& msg) : NumericalError(msg) {}
};

// Conjugate gradient hit a zero-curvature direction (operator not positive
// definite on the reachable span).
class BreakdownError : public NumericalError {
public:
    explicit BreakdownError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace weblens
