#pragma once
#include <stdexcept>
#include <string>

namespace bitrade {

struct DegeneratePriceError : std::runtime_error {
    explicit DegeneratePriceError(const std::string& what) : std::runtime_error(what) {}
};

struct OrientationViolatedError : std::runtime_error {
    explicit OrientationViolatedError(const std::string& what)
        : std::runtime_error(what + " (remedy: swap_regions and solve the mirrored game)") {}
};

struct InfeasibleProfileError : std::runtime_error {
    explicit InfeasibleProfileError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionViolatedError : std::runtime_error {
    explicit PreconditionViolatedError(const std::string& what) : std::runtime_error(what) {}
};

struct NonFiniteError : std::runtime_error {
    explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bitrade
