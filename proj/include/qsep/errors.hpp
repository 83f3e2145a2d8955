#pragma once

#include <stdexcept>
#include <string>

namespace qsep {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct BadDimension : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    explicit NotHermitian(double res)
        : Error("matrix not Hermitian, max asymmetry " + std::to_string(res)),
          residual(res) {}
    double residual;
};

struct NotNormalized : Error {
    using Error::Error;
};

struct NotOrthonormal : Error {
    using Error::Error;
};

struct IncompleteBasis : Error {
    using Error::Error;
};

// Carries the name of the violated invariant and the measured residual.
struct InvariantViolation : Error {
    InvariantViolation(const std::string& which, double res)
        : Error("invariant violation: " + which + " (residual " + std::to_string(res) + ")"),
          invariant(which), residual(res) {}
    std::string invariant;
    double residual;
};

struct ParseError : Error {
    using Error::Error;
};

struct CertificateMismatch : Error {
    using Error::Error;
};

struct UnsupportedDimensions : Error {
    using Error::Error;
};

struct BadSpec : Error {
    using Error::Error;
};

}  // namespace qsep
