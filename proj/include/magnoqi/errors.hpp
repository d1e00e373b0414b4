#ifndef MAGNOQI_ERRORS_HPP
#define MAGNOQI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace magnoqi {

// Thrown when an operation is evaluated outside the steady-state regime
// 1 + lambda_b - lambda_a > 0.
struct UnstableRegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when an iterative numerical method fails to converge or a matrix
// is malformed beyond the documented tolerances.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by the CM-based measures when the caller mixes conventions
// (e.g. asks for a covariance matrix off resonance).
struct ConventionError : std::domain_error {
    using std::domain_error::domain_error;
};

// Configuration parse/validation failure. Carries the offending key and
// 1-based line number (0 when not tied to a specific line).
struct ConfigError : std::runtime_error {
    std::string key;
    int line = 0;

    ConfigError(const std::string& message, std::string key_name = "", int line_no = 0)
        : std::runtime_error(message), key(std::move(key_name)), line(line_no) {}
};

} // namespace magnoqi

#endif
