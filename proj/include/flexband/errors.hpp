#pragma once

#include <stdexcept>
#include <string>

namespace flexband {

// Bad input: malformed case data, out-of-range arguments, contract misuse.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A model would exceed its configured enumeration cap (tree leaves, SoC corners).
class SizeCapError : public std::runtime_error {
public:
    explicit SizeCapError(const std::string& msg) : std::runtime_error(msg) {}
};

// A program that should be feasible is not (or an input case is infeasible).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown inside the solver; reported distinctly from infeasibility.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace flexband
