#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace wprs {
namespace core {

// Thrown for arguments that violate a documented precondition.
class invalid_argument_error : public std::invalid_argument {
public:
    explicit invalid_argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Thrown for mathematically degenerate model states (e.g. nonpositive
// estimated-channel variance).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// Thrown by config parsing/validation; message carries the offending field path.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void check_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw invalid_argument_error(std::string(name) + " must be finite");
}

inline void check_positive(double v, const char* name) {
    check_finite(v, name);
    if (v <= 0.0)
        throw invalid_argument_error(std::string(name) + " must be positive");
}

inline void check_nonnegative(double v, const char* name) {
    check_finite(v, name);
    if (v < 0.0)
        throw invalid_argument_error(std::string(name) + " must be nonnegative");
}

// Open-interval check, e.g. alpha in (0,1).
inline void check_in_open_unit(double v, const char* name) {
    check_finite(v, name);
    if (v <= 0.0 || v >= 1.0)
        throw invalid_argument_error(std::string(name) + " must lie in (0,1)");
}

// Clamp a probability to [0,1]; records how far numerical noise escaped the
// interval so callers can surface excursions above their diagnostic threshold.
inline double clamp01(double v, double* excursion = nullptr) {
    double exc = 0.0;
    if (v < 0.0) {
        exc = -v;
        v = 0.0;
    } else if (v > 1.0) {
        exc = v - 1.0;
        v = 1.0;
    }
    if (excursion && exc > *excursion)
        *excursion = exc;
    return v;
}

} // namespace core
} // namespace wprs
