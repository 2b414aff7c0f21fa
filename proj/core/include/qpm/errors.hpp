#ifndef QPM_ERRORS_HPP
#define QPM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpm {

// Bad or missing configuration (unknown key, unparsable value, domain violation).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical solver failures: no bound mode, broken mode triplet, quadrature
// tolerance not reached, calibration target unreachable.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

class NoModeError : public SolverError {
public:
    explicit NoModeError(const std::string& msg) : SolverError(msg) {}
};

class ModeCountError : public SolverError {
public:
    ModeCountError(const std::string& msg, int found) : SolverError(msg), count_found(found) {}
    int count_found = 0;
};

class CalibrationError : public SolverError {
public:
    CalibrationError(const std::string& msg, double residual)
        : SolverError(msg), best_residual(residual) {}
    double best_residual = 0.0;
};

// Design-stage failures (no crossing, degenerate state).
class DesignError : public std::runtime_error {
public:
    explicit DesignError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qpm

#endif
