// error.hpp: exception hierarchy shared by the aqrm library

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace aqrm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class EigenSolverError : public Error {
public:
    using Error::Error;
};

// Truncation growth reached the cap without the energies settling.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, int n_max_reached, std::vector<double> last_deltas)
        : Error(what), n_max_reached_(n_max_reached), last_deltas_(std::move(last_deltas)) {}

    int n_max_reached() const noexcept { return n_max_reached_; }
    const std::vector<double>& last_deltas() const noexcept { return last_deltas_; }

private:
    int n_max_reached_;
    std::vector<double> last_deltas_;
};

// The rate matrix has more than one closed class, so the stationary state is not unique.
class ReducibleGeneratorError : public Error {
public:
    ReducibleGeneratorError(const std::string& what, std::vector<std::vector<int>> components)
        : Error(what), components_(std::move(components)) {}

    const std::vector<std::vector<int>>& components() const noexcept { return components_; }

private:
    std::vector<std::vector<int>> components_;
};

// Steady-state population in the highest retained level stayed above the leakage bound.
class LeakageError : public Error {
public:
    LeakageError(const std::string& what, double top_population)
        : Error(what), top_population_(top_population) {}

    double top_population() const noexcept { return top_population_; }

private:
    double top_population_;
};

} // namespace aqrm
