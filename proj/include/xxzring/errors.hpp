#pragma once

#include <stdexcept>
#include <string>

namespace xxzring {

// Bad input: malformed spec, bad plan file, out-of-range parameter.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: eigensolver non-convergence, invalid state detected mid-pipeline.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bisection bracket does not straddle the entanglement vanishing point.
class BracketError : public NumericalError {
public:
    explicit BracketError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace xxzring
