#ifndef RDSTC_ERRORS_HPP
#define RDSTC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rdstc {

// Thrown when a correlation or system matrix is not positive definite even
// after diagonal loading.
struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by the adaptive loop when the running error power blows up.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a code matrix has zero power and cannot be normalized.
struct DegenerateCodeError : std::runtime_error {
    explicit DegenerateCodeError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a feedback packet does not match the expected bit layout.
struct MalformedPacketError : std::runtime_error {
    explicit MalformedPacketError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown for (N, T) combinations with no shipped space-time code structure.
struct UnsupportedConfigError : std::runtime_error {
    explicit UnsupportedConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when the power-constraint multiplier cannot be bracketed.
struct InfeasibleConstraintError : std::runtime_error {
    explicit InfeasibleConstraintError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rdstc

#endif  // RDSTC_ERRORS_HPP
